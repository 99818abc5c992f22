#include "emskin/field.hpp"

#include <cmath>
#include <numbers>

namespace emskin {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

// Observation point in the tile frame, reduced to what the pattern needs.
struct LocalObs {
  double dist = 0.0;
  double u = 0.0; // sin(theta) cos(phi)
  double v = 0.0; // sin(theta) sin(phi)
  bool in_front = false;
};

LocalObs observe(const Tile& tile, const Vec3& obs) {
  const Vec3 local = to_local(obs, tile);
  LocalObs o;
  o.dist = local.norm();
  if (o.dist > 0.0) {
    o.u = local.x / o.dist;
    o.v = local.y / o.dist;
    o.in_front = local.z > 0.0;
  }
  return o;
}

// Real magnitude of the closed-form field (everything except the phase terms).
double magnitude(const Tile& tile, const LocalObs& o, const FieldConfig& cfg, const BaseStation& bs) {
  if (!o.in_front || tile.cos_inc_local < 0.0 || tile.cos_steer_local < 0.0) {
    return 0.0;
  }
  const double k = bs.wavenumber();
  const double kl = cfg.sinc_arg_scale * k * tile.side;
  const double dx = o.u - tile.steer_u;
  const double dy = o.v - tile.steer_v;
  // E_inc is an H-field amplitude scaled by the free-space impedance, so
  // eta / eta_0 is 1 at the default configuration.
  const double drive = k * (cfg.eta / kFreeSpaceImpedance) * bs.field_amplitude;
  const double spread = 4.0 * std::numbers::pi * tile.d_inc * o.dist;
  return drive * tile.side * tile.side * (tile.cos_inc_local + tile.cos_steer_local) / spread * sinc(kl * dx) *
         sinc(kl * dy);
}

} // namespace

void FieldConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("field: eta must be positive");
  }
  if (sinc_arg_scale != 1.0 && sinc_arg_scale != 0.5) {
    throw InputError("field: sinc_arg_scale must be 1.0 or 0.5");
  }
}

Vec3 to_local(const Vec3& point, const Tile& tile) {
  return {point.y - tile.barycenter.y, point.z - tile.barycenter.z, point.x - tile.barycenter.x};
}

SphericalDir local_angles(const Vec3& local_point) { return spherical_angles(local_point); }

double sinc(double x) {
  if (std::abs(x) < 1e-8) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

ComplexField reflected_field(const Tile& tile, const Vec3& obs, const FieldConfig& cfg, const BaseStation& bs) {
  const LocalObs o = observe(tile, obs);
  if (!(o.dist > 0.0)) {
    throw InputError("reflected_field: observation point coincides with tile " + std::to_string(tile.index));
  }
  const double mag = magnitude(tile, o, cfg, bs);
  if (mag == 0.0) {
    return {0.0, 0.0};
  }
  const double k = bs.wavenumber();
  const double phase = k * (tile.d_inc + o.dist) + cfg.phase_inc + cfg.phase_eng;
  return -kJ * mag * std::polar(1.0, -phase);
}

double tile_power(const Tile& tile, const Vec3& obs, const FieldConfig& cfg, const BaseStation& bs) {
  const LocalObs o = observe(tile, obs);
  if (!(o.dist > 0.0)) {
    return 0.0;
  }
  const double mag = magnitude(tile, o, cfg, bs);
  return mag * mag;
}

double received_power(const Layout& layout, const Vec3& obs, const Scenario& scenario, const FieldConfig& cfg) {
  if (layout.size() != scenario.tile_count()) {
    throw InputError("received_power: layout length does not match the tile count");
  }
  double total = 0.0;
  for (std::size_t n = 0; n < layout.size(); ++n) {
    if (layout.bits[n]) {
      total += tile_power(scenario.tiles[n], obs, cfg, scenario.base_station);
    }
  }
  return total;
}

double to_db(double linear) {
  if (!(linear > 0.0)) {
    return kSentinelDb;
  }
  return std::max(10.0 * std::log10(linear), kSentinelDb);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

RegionSpec RegionSpec::centered(const Vec3& center, double extent_u, double extent_v, int cells_u, int cells_v,
                                double height) {
  RegionSpec r;
  r.origin = {center.x - 0.5 * extent_u, center.y - 0.5 * extent_v, height};
  r.extent_u = extent_u;
  r.extent_v = extent_v;
  r.cells_u = cells_u;
  r.cells_v = cells_v;
  r.height = height;
  return r;
}

Vec3 RegionSpec::cell_center(int iu, int iv) const {
  const double su = (iu + 0.5) * extent_u / cells_u;
  const double sv = (iv + 0.5) * extent_v / cells_v;
  Vec3 p = origin + axis_u * su + axis_v * sv;
  p.z = height;
  return p;
}

PowerGrid sample_power_grid(const Layout& layout, const RegionSpec& region, const Scenario& scenario,
                            const FieldConfig& cfg) {
  if (region.cells_u < 1 || region.cells_v < 1) {
    throw InputError("power grid: resolution must be at least one cell per axis");
  }
  if (!(region.extent_u > 0.0) || !(region.extent_v > 0.0)) {
    throw InputError("power grid: region extents must be positive");
  }
  if (layout.size() != scenario.tile_count()) {
    throw InputError("power grid: layout length does not match the tile count");
  }
  PowerGrid g;
  g.origin = region.origin;
  g.axis_u = region.axis_u;
  g.axis_v = region.axis_v;
  g.extent_u = region.extent_u;
  g.extent_v = region.extent_v;
  g.cells_u = region.cells_u;
  g.cells_v = region.cells_v;
  g.height = region.height;
  g.values.reserve(static_cast<std::size_t>(g.cells_u) * static_cast<std::size_t>(g.cells_v));
  for (int iv = 0; iv < g.cells_v; ++iv) {
    for (int iu = 0; iu < g.cells_u; ++iu) {
      g.values.push_back(to_db(received_power(layout, region.cell_center(iu, iv), scenario, cfg)));
    }
  }
  return g;
}

} // namespace emskin
