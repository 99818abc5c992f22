#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emskin/geometry.hpp"

namespace emskin {

struct BaseStation {
  Vec3 position;
  double field_amplitude = 1.0; // V/m
  double frequency_hz = 27e9;

  double wavelength() const { return kSpeedOfLight / frequency_hz; }
  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }
};

/// Tile lattice on the facade plane x = 0, enumerated in raster order from the
/// top-left cell: index runs along +y first, then rows step down in z.
struct FacadeGrid {
  double first_y = 0.0;
  double first_z = 0.0;
  double tile_side = 0.5;
  int ny = 1;
  int nz = 1;
  std::vector<bool> admissible; // row-major, same order as the tile index

  std::size_t size() const { return static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz); }
  std::size_t admissible_count() const;
};

/// Rectangular ground region, long axis along `azimuth_deg`.
struct AreaOfInterest {
  Vec3 center;              // z is the focal-plane height
  double length = 50.0;     // along the long axis
  double width = 10.0;      // across
  double azimuth_deg = 0.0; // direction of the long axis in the x-y plane
  int partition_long = 1;
  int partition_short = 1;
  double receiver_height = 1.5;
  double receiver_density = 1.0; // receivers per m^2

  Vec3 long_axis() const;
  Vec3 short_axis() const;
  double area() const { return length * width; }
};

struct Tile {
  int index = 1; // 1-based
  Vec3 barycenter;
  Vec3 focal_point;
  double side = 0.0; // L
  SphericalDir incident_dir;       // BS direction seen from the tile, global frame
  SphericalDir steering_dir_local; // focal direction in the tile frame
  double d_inc = 0.0;
  double d_focal = 0.0;
  bool admissible = true;

  // Cached quantities used by the field evaluation.
  double cos_inc_local = 0.0;   // incident direction against the facade normal
  double cos_steer_local = 0.0; // steering direction against the facade normal
  double steer_u = 0.0;         // sin(theta) cos(phi) of the steering direction
  double steer_v = 0.0;         // sin(theta) sin(phi)
};

struct Scenario {
  BaseStation base_station;
  FacadeGrid facade;
  AreaOfInterest aoi;
  double power_threshold_db = -70.0;
  double blackout_threshold_db = -100.0;

  std::vector<Tile> tiles;
  std::vector<Vec3> receivers;
  /// Receiver lattice shape: receivers are stored row-major, `receiver_cols`
  /// along the long axis per row.
  int receiver_cols = 0;
  int receiver_rows = 0;

  std::size_t tile_count() const { return tiles.size(); }
};

/// Everything a scenario file carries, before validation.
struct ScenarioConfig {
  double frequency_hz = 0.0;
  Vec3 bs_position;
  double e_field_amplitude = 1.0;
  double first_y = 0.0;
  double first_z = 0.0;
  double tile_side = 0.0;
  int ny = 0;
  int nz = 0;
  std::string mask; // row-major '0'/'1'; empty means all admissible
  Vec3 aoi_center;
  double aoi_length = 0.0;
  double aoi_width = 0.0;
  double aoi_azimuth_deg = 0.0;
  int partition_long = 0;
  int partition_short = 0;
  double receiver_height = 1.5;
  double receiver_density = 1.0;
  double p_th_db = -70.0;
  double p_bls_db = -100.0;
};

/// Barycenter of tile `n` (1-based), raster order from the top-left corner.
Vec3 tile_barycenter(const FacadeGrid& grid, int n);

/// Direction of the base station seen from `point`:
/// theta = arccos((z_bs - z) / |r_bs - r|), phi = atan2(y_bs - y, x_bs).
SphericalDir incident_direction(const BaseStation& bs, const Vec3& point);

/// Cell centers of the raster-ordered p_long x p_short partition of the area;
/// tile n maps to partition n.
std::vector<Vec3> assign_focal_points(const FacadeGrid& grid, const AreaOfInterest& aoi);

struct ReceiverLattice {
  std::vector<Vec3> positions;
  int cols = 0; // along the long axis
  int rows = 0;
};

/// Uniform receiver lattice over the area at receiver height.
ReceiverLattice place_receivers(const AreaOfInterest& aoi);

/// Tile with all geometric caches filled in.
Tile make_tile(int index, const Vec3& barycenter, const Vec3& focal_point, double side, const BaseStation& bs,
               bool admissible = true);

Scenario build_scenario(const ScenarioConfig& config);

} // namespace emskin
