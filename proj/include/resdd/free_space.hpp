#pragma once

#include <cmath>
#include <numbers>

#include "resdd/core.hpp"
#include "resdd/errors.hpp"

namespace resdd {

// Free-space resonance interaction tensor between two dipoles separated by s:
//
//   V_ij(s) = [ (d_ij - 3 u_i u_j)(cos y + y sin y)
//             - (d_ij -   u_i u_j) y^2 cos y ] / (4 pi r^3)
//
// with r = |s|, u = s/r, y = k0 r. V carries eV^3 so that mu_i V_ij mu_j is
// an energy in eV for dipoles in eV^-1. k0 = 0 is admitted as the static
// limit (a test aid, not a physical regime).
struct InteractionTensor {
  Mat3 v;
  Vec3 separation;
  double k0;
};

inline InteractionTensor resonance_tensor(double k0, Vec3 s) {
  const double r = s.norm();
  if (r == 0.0)
    throw ZeroSeparation("resonance_tensor: |s| = 0");
  if (!(k0 >= 0.0))
    throw InvalidParameter("resonance_tensor: k0 must be >= 0");

  const double y = k0 * r;
  const double near = std::cos(y) + y * std::sin(y);
  const double wave = y * y * std::cos(y);
  const Vec3 u = (1.0 / r) * s;
  const double pref = 1.0 / (4.0 * std::numbers::pi * r * r * r);

  InteractionTensor t{{}, s, k0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double dij = i == j ? 1.0 : 0.0;
      const double uu = u[i] * u[j];
      t.v(i, j) = pref * ((dij - 3.0 * uu) * near - (dij - uu) * wave);
    }
  }
  return t;
}

inline double contract(const DipoleVector &a, const Mat3 &v, const DipoleVector &b) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e += a[i] * v(i, j) * b[j];
  return e;
}

// Resonance interaction energy of two correlated dipoles at arbitrary
// separation, eV. Bilinear in the dipoles and odd in the Bell parity.
inline double free_space_energy(const DipoleVector &mu_a, const DipoleVector &mu_b, double k0,
                                Vec3 s, BellParity parity) {
  const InteractionTensor t = resonance_tensor(k0, s);
  return parity_sign(parity) * contract(mu_a, t.v, mu_b);
}

// Closed form for atoms aligned with the mirror normal (separation L along z).
// Transverse components (x, y) couple through cos + y sin - y^2 cos; the
// longitudinal component (z) through -2 (y sin + cos).
inline double perpendicular_free_space(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                       double k0, double separation_l, BellParity parity) {
  if (!(separation_l > 0.0))
    throw ZeroSeparation("perpendicular_free_space: L must be > 0");
  const double y = k0 * separation_l;
  const double trans = std::cos(y) + y * std::sin(y) - y * y * std::cos(y);
  const double longi = -2.0 * (y * std::sin(y) + std::cos(y));
  const double pref =
      parity_sign(parity) / (4.0 * std::numbers::pi * separation_l * separation_l * separation_l);
  return pref * ((mu_a.mx * mu_b.mx + mu_a.my * mu_b.my) * trans + mu_a.mz * mu_b.mz * longi);
}

// Closed form for atoms aligned along y at the same height (separation D).
// The longitudinal role is played by the y components; x and z are transverse.
inline double parallel_free_space(const DipoleVector &mu_a, const DipoleVector &mu_b, double k0,
                                  double separation_d, BellParity parity) {
  if (!(separation_d > 0.0))
    throw ZeroSeparation("parallel_free_space: D must be > 0");
  const double y = k0 * separation_d;
  const double trans = std::cos(y) + y * std::sin(y) - y * y * std::cos(y);
  const double longi = -2.0 * (y * std::sin(y) + std::cos(y));
  const double pref =
      parity_sign(parity) / (4.0 * std::numbers::pi * separation_d * separation_d * separation_d);
  return pref * ((mu_a.mx * mu_b.mx + mu_a.mz * mu_b.mz) * trans + mu_a.my * mu_b.my * longi);
}

} // namespace resdd
