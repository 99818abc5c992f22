#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace emskin {

/// Rejected user input (bad config, bad layout, out-of-range index).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Environment failure (file cannot be read or written).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// Polar angle theta in [0, 180] and azimuth phi in (-180, 180], degrees.
struct SphericalDir {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
};

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kFreeSpaceImpedance = 376.730313668;

constexpr double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Spherical angles of a non-zero vector measured from +z, azimuth from +x.
inline SphericalDir spherical_angles(const Vec3& v) {
  const double r = v.norm();
  if (!(r > 0.0)) {
    throw InputError("spherical_angles: zero-length direction");
  }
  const double c = std::clamp(v.z / r, -1.0, 1.0);
  double phi = rad_to_deg(std::atan2(v.y, v.x));
  if (phi <= -180.0) {
    phi = 180.0;
  }
  return {rad_to_deg(std::acos(c)), phi};
}

/// Unit vector for the given spherical angles.
inline Vec3 unit_from_angles(const SphericalDir& d) {
  const double t = deg_to_rad(d.theta_deg);
  const double p = deg_to_rad(d.phi_deg);
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

} // namespace emskin
