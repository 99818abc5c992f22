#pragma once

#include <complex>
#include <span>
#include <vector>

#include "emskin/layout.hpp"
#include "emskin/scene.hpp"

namespace emskin {

using ComplexField = std::complex<double>;

/// dB value used for zero power in exported grids.
inline constexpr double kSentinelDb = -400.0;

struct FieldConfig {
  double eta = kFreeSpaceImpedance;
  double phase_inc = 0.0; // radians
  double phase_eng = 0.0; // radians
  double sinc_arg_scale = 1.0;

  /// Throws InputError unless eta > 0 and sinc_arg_scale is 1.0 or 0.5.
  void validate() const;
};

/// Global point expressed in the tile frame: (y - y_s, z - z_s, x).
Vec3 to_local(const Vec3& point, const Tile& tile);

/// Spherical angles of a tile-frame point.
SphericalDir local_angles(const Vec3& local_point);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Closed-form far-field reflection of one tile at `obs`. The spreading and
/// propagation phase use the actual observation distance; the steering angles
/// stay pinned to the tile's focal point.
ComplexField reflected_field(const Tile& tile, const Vec3& obs, const FieldConfig& cfg, const BaseStation& bs);

/// |E|^2 of one tile, without the rejection of a coincident observation point.
/// Returns 0 for points on or behind the facade plane.
double tile_power(const Tile& tile, const Vec3& obs, const FieldConfig& cfg, const BaseStation& bs);

/// Incoherent sum of |E|^2 over installed tiles, linear (V/m)^2.
double received_power(const Layout& layout, const Vec3& obs, const Scenario& scenario, const FieldConfig& cfg);

/// 10 log10 of a linear power, floored at kSentinelDb.
double to_db(double linear);

/// Linear power for a dB value.
double from_db(double db);

/// Rectangular sampling region at fixed height.
struct RegionSpec {
  Vec3 origin;              // corner of the region; z is ignored, `height` is used
  Vec3 axis_u{1.0, 0.0, 0.0};
  Vec3 axis_v{0.0, 1.0, 0.0};
  double extent_u = 1.0;    // meters
  double extent_v = 1.0;
  int cells_u = 1;
  int cells_v = 1;
  double height = 1.5;

  /// Region of the given size centred on `center`, aligned to the global axes.
  static RegionSpec centered(const Vec3& center, double extent_u, double extent_v, int cells_u, int cells_v,
                             double height);

  Vec3 cell_center(int iu, int iv) const;
};

struct PowerGrid {
  Vec3 origin;
  Vec3 axis_u;
  Vec3 axis_v;
  double extent_u = 0.0;
  double extent_v = 0.0;
  int cells_u = 0;
  int cells_v = 0;
  double height = 0.0;
  std::vector<double> values; // dB, row-major: row iv, column iu

  double at(int iu, int iv) const { return values[static_cast<std::size_t>(iv) * cells_u + iu]; }
  RegionSpec region() const { return {origin, axis_u, axis_v, extent_u, extent_v, cells_u, cells_v, height}; }
};

/// Cell-centre sampling of received_power over the region, in dB.
PowerGrid sample_power_grid(const Layout& layout, const RegionSpec& region, const Scenario& scenario,
                            const FieldConfig& cfg);

} // namespace emskin
