#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "resdd/resdd.hpp"

namespace helpers {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eedf00du) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// log-uniform draw, for distances and frequencies spanning decades
inline double log_uniform(std::mt19937_64 &rng, double lo, double hi) {
  return lo * std::exp(uniform(rng, 0.0, 1.0) * std::log(hi / lo));
}

inline resdd::DipoleVector unit_dipole(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  resdd::DipoleVector m{n(rng), n(rng), n(rng)};
  const double norm = m.norm();
  return {m.mx / norm, m.my / norm, m.mz / norm};
}

inline resdd::BellParity random_parity(std::mt19937_64 &rng) {
  return uniform(rng, 0.0, 1.0) < 0.5 ? resdd::BellParity::Symmetric
                                      : resdd::BellParity::Antisymmetric;
}

// rotation matrix from a random unit quaternion
inline resdd::Mat3 random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  double q0 = n(rng), q1 = n(rng), q2 = n(rng), q3 = n(rng);
  const double norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  q0 /= norm;
  q1 /= norm;
  q2 /= norm;
  q3 /= norm;
  resdd::Mat3 r;
  r(0, 0) = 1 - 2 * (q2 * q2 + q3 * q3);
  r(0, 1) = 2 * (q1 * q2 - q0 * q3);
  r(0, 2) = 2 * (q1 * q3 + q0 * q2);
  r(1, 0) = 2 * (q1 * q2 + q0 * q3);
  r(1, 1) = 1 - 2 * (q1 * q1 + q3 * q3);
  r(1, 2) = 2 * (q2 * q3 - q0 * q1);
  r(2, 0) = 2 * (q1 * q3 - q0 * q2);
  r(2, 1) = 2 * (q2 * q3 + q0 * q1);
  r(2, 2) = 1 - 2 * (q1 * q1 + q2 * q2);
  return r;
}

inline resdd::Vec3 apply(const resdd::Mat3 &r, resdd::Vec3 v) {
  return {r(0, 0) * v.x + r(0, 1) * v.y + r(0, 2) * v.z,
          r(1, 0) * v.x + r(1, 1) * v.y + r(1, 2) * v.z,
          r(2, 0) * v.x + r(2, 1) * v.y + r(2, 2) * v.z};
}

inline resdd::DipoleVector apply(const resdd::Mat3 &r, resdd::DipoleVector m) {
  const resdd::Vec3 v = apply(r, resdd::Vec3{m.mx, m.my, m.mz});
  return {v.x, v.y, v.z};
}

// Relative difference with a floor: route-equivalence checks compare against
// the magnitude of the closed-form constituents, so cancellation in the final
// value does not turn floating-point noise into spurious failures.
inline double rel_diff(double a, double b, double scale = 0.0) {
  const double denom = std::max({std::abs(a), std::abs(b), scale});
  return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

// Magnitude of the largest bracket constituent of the closed forms at
// wavenumber-distance k0 * dist.
inline double bracket_scale(const resdd::DipoleVector &a, const resdd::DipoleVector &b, double k0,
                            double dist) {
  const double y = k0 * dist;
  return a.norm() * b.norm() * (1.0 + y + y * y) / (4.0 * std::numbers::pi * dist * dist * dist);
}

// Magnitude scale of the near-zone expressions.
inline double near_zone_scale(const resdd::DipoleVector &a, const resdd::DipoleVector &b,
                              double sep, double image_dist) {
  return a.norm() * b.norm() * 3.0 *
         (1.0 / (sep * sep * sep) + 1.0 / (image_dist * image_dist * image_dist)) /
         (4.0 * std::numbers::pi);
}

// least-squares slope of log|err| vs log x
inline double fitted_exponent(const std::vector<double> &x, const std::vector<double> &err) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace helpers
