#include "emskin/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace emskin {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) {
    throw InputError(field + ": " + what);
  }
}

Vec3 to_tile_frame(const Vec3& p, const Vec3& barycenter) {
  return {p.y - barycenter.y, p.z - barycenter.z, p.x - barycenter.x};
}

} // namespace

std::size_t FacadeGrid::admissible_count() const {
  return static_cast<std::size_t>(std::count(admissible.begin(), admissible.end(), true));
}

Vec3 AreaOfInterest::long_axis() const {
  const double a = deg_to_rad(azimuth_deg);
  return {std::cos(a), std::sin(a), 0.0};
}

Vec3 AreaOfInterest::short_axis() const {
  const double a = deg_to_rad(azimuth_deg);
  return {-std::sin(a), std::cos(a), 0.0};
}

Vec3 tile_barycenter(const FacadeGrid& grid, int n) {
  const auto count = static_cast<int>(grid.size());
  if (n < 1 || n > count) {
    std::ostringstream msg;
    msg << "tile index " << n << " out of range [1, " << count << "]";
    throw InputError(msg.str());
  }
  const int row = (n - 1) / grid.ny;
  const int col = (n - 1) - row * grid.ny;
  return {0.0, grid.first_y + col * grid.tile_side, grid.first_z - row * grid.tile_side};
}

SphericalDir incident_direction(const BaseStation& bs, const Vec3& point) {
  const Vec3 d = bs.position - point;
  const double dist = d.norm();
  if (!(dist > 0.0)) {
    throw InputError("incident_direction: base station coincides with the tile");
  }
  const double c = std::clamp(d.z / dist, -1.0, 1.0);
  return {rad_to_deg(std::acos(c)), rad_to_deg(std::atan2(d.y, d.x))};
}

std::vector<Vec3> assign_focal_points(const FacadeGrid& grid, const AreaOfInterest& aoi) {
  const auto parts = static_cast<std::size_t>(aoi.partition_long) * static_cast<std::size_t>(aoi.partition_short);
  if (aoi.partition_long < 1 || aoi.partition_short < 1 || parts != grid.size()) {
    std::ostringstream msg;
    msg << "aoi.partition: " << aoi.partition_long << "x" << aoi.partition_short
        << " partitions do not match the " << grid.size() << " facade tiles";
    throw InputError(msg.str());
  }
  const Vec3 ul = aoi.long_axis();
  const Vec3 us = aoi.short_axis();
  const double step_l = aoi.length / aoi.partition_long;
  const double step_s = aoi.width / aoi.partition_short;

  std::vector<Vec3> out;
  out.reserve(parts);
  for (int j = 0; j < aoi.partition_short; ++j) {
    for (int i = 0; i < aoi.partition_long; ++i) {
      const double l = -0.5 * aoi.length + (i + 0.5) * step_l;
      const double s = -0.5 * aoi.width + (j + 0.5) * step_s;
      out.push_back(aoi.center + ul * l + us * s);
    }
  }
  return out;
}

ReceiverLattice place_receivers(const AreaOfInterest& aoi) {
  if (!(aoi.length > 0.0) || !(aoi.width > 0.0)) {
    throw InputError("aoi: zero-area region cannot host receivers");
  }
  if (!(aoi.receiver_density > 0.0)) {
    throw InputError("aoi.receiver_density_per_m2: must be positive");
  }
  const double per_m = std::sqrt(aoi.receiver_density);
  ReceiverLattice lat;
  lat.cols = std::max(1, static_cast<int>(std::lround(aoi.length * per_m)));
  lat.rows = std::max(1, static_cast<int>(std::lround(aoi.width * per_m)));

  const Vec3 ul = aoi.long_axis();
  const Vec3 us = aoi.short_axis();
  const Vec3 base{aoi.center.x, aoi.center.y, aoi.receiver_height};
  lat.positions.reserve(static_cast<std::size_t>(lat.cols) * static_cast<std::size_t>(lat.rows));
  for (int r = 0; r < lat.rows; ++r) {
    const double s = -0.5 * aoi.width + (r + 0.5) * aoi.width / lat.rows;
    for (int c = 0; c < lat.cols; ++c) {
      const double l = -0.5 * aoi.length + (c + 0.5) * aoi.length / lat.cols;
      lat.positions.push_back(base + ul * l + us * s);
    }
  }
  return lat;
}

Tile make_tile(int index, const Vec3& barycenter, const Vec3& focal_point, double side, const BaseStation& bs,
               bool admissible) {
  if (!(side > 0.0)) {
    throw InputError("tile " + std::to_string(index) + ": side must be positive");
  }
  Tile t;
  t.index = index;
  t.barycenter = barycenter;
  t.focal_point = focal_point;
  t.side = side;
  t.admissible = admissible;

  const Vec3 to_bs = bs.position - barycenter;
  t.d_inc = to_bs.norm();
  if (!(t.d_inc > 0.0)) {
    throw InputError("tile " + std::to_string(index) + ": base station coincides with the barycenter");
  }
  t.incident_dir = incident_direction(bs, barycenter);

  const Vec3 to_focal = focal_point - barycenter;
  t.d_focal = to_focal.norm();
  if (!(t.d_focal > 0.0)) {
    throw InputError("tile " + std::to_string(index) + ": focal point coincides with the barycenter");
  }
  if (!(to_focal.x > 0.0)) {
    throw InputError("tile " + std::to_string(index) + ": focal point lies behind the facade plane");
  }

  const Vec3 local = to_tile_frame(focal_point, barycenter);
  t.steering_dir_local = spherical_angles(local);
  t.cos_inc_local = to_bs.x / t.d_inc;
  t.cos_steer_local = local.z / t.d_focal;
  t.steer_u = local.x / t.d_focal;
  t.steer_v = local.y / t.d_focal;
  return t;
}

Scenario build_scenario(const ScenarioConfig& c) {
  require(std::isfinite(c.frequency_hz) && c.frequency_hz > 0.0, "frequency_hz", "must be positive");
  require(c.bs_position.finite(), "bs_position", "must be finite");
  require(c.bs_position.x > 0.0, "bs_position", "base station must lie in front of the facade (x > 0)");
  require(std::isfinite(c.e_field_amplitude) && c.e_field_amplitude > 0.0, "e_field_amplitude",
          "must be positive");
  require(std::isfinite(c.tile_side) && c.tile_side > 0.0, "facade.tile_side_m", "must be positive");
  require(c.ny >= 1, "facade.ny", "must be >= 1");
  require(c.nz >= 1, "facade.nz", "must be >= 1");
  require(std::isfinite(c.first_y) && std::isfinite(c.first_z), "facade.first_barycenter_yz", "must be finite");

  Scenario s;
  s.base_station = {c.bs_position, c.e_field_amplitude, c.frequency_hz};

  FacadeGrid& g = s.facade;
  g.first_y = c.first_y;
  g.first_z = c.first_z;
  g.tile_side = c.tile_side;
  g.ny = c.ny;
  g.nz = c.nz;
  const std::size_t n = g.size();
  if (c.mask.empty()) {
    g.admissible.assign(n, true);
  } else {
    if (c.mask.size() != n) {
      std::ostringstream msg;
      msg << "mask length " << c.mask.size() << " does not match ny*nz = " << n;
      require(false, "facade.mask", msg.str());
    }
    g.admissible.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const char ch = c.mask[i];
      require(ch == '0' || ch == '1', "facade.mask", "only '0' and '1' are allowed");
      g.admissible[i] = ch == '1';
    }
  }
  require(g.admissible_count() > 0, "facade.mask", "no admissible tiles");

  AreaOfInterest& a = s.aoi;
  a.center = c.aoi_center;
  a.length = c.aoi_length;
  a.width = c.aoi_width;
  a.azimuth_deg = c.aoi_azimuth_deg;
  a.partition_long = c.partition_long;
  a.partition_short = c.partition_short;
  a.receiver_height = c.receiver_height;
  a.receiver_density = c.receiver_density;
  require(a.center.finite(), "aoi.center_xyz", "must be finite");
  require(std::isfinite(a.length) && a.length > 0.0, "aoi.length_m", "must be positive");
  require(std::isfinite(a.width) && a.width > 0.0, "aoi.width_m", "must be positive");
  require(std::isfinite(a.receiver_density) && a.receiver_density > 0.0, "aoi.receiver_density_per_m2",
          "must be positive");
  require(std::isfinite(a.receiver_height), "aoi.receiver_height_m", "must be finite");

  require(std::isfinite(c.p_th_db) && std::isfinite(c.p_bls_db), "thresholds", "must be finite");
  require(c.p_th_db >= c.p_bls_db, "thresholds", "p_th_db must be >= p_bls_db");
  s.power_threshold_db = c.p_th_db;
  s.blackout_threshold_db = c.p_bls_db;

  const std::vector<Vec3> focal = assign_focal_points(g, a);
  s.tiles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int idx = static_cast<int>(i) + 1;
    s.tiles.push_back(make_tile(idx, tile_barycenter(g, idx), focal[i], g.tile_side, s.base_station, g.admissible[i]));
  }

  ReceiverLattice lat = place_receivers(a);
  s.receivers = std::move(lat.positions);
  s.receiver_cols = lat.cols;
  s.receiver_rows = lat.rows;
  return s;
}

} // namespace emskin
