#pragma once

#include <cmath>
#include <numbers>

#include "resdd/core.hpp"
#include "resdd/errors.hpp"
#include "resdd/free_space.hpp"

namespace resdd {

// A source at (x, y, z) with dipole mu behind a perfect mirror at z = 0 is
// reproduced by an image at (x, y, -z) with dipole (-mu_x, -mu_y, +mu_z).
struct ImageSystem {
  Vec3 position;
  DipoleVector dipole;
};

inline ImageSystem image_of(Vec3 pos, const DipoleVector &mu) {
  if (!(pos.z > 0.0))
    throw AtomOnOrBehindMirror("image_of: source must have z > 0");
  return {{pos.x, pos.y, -pos.z}, {-mu.mx, -mu.my, mu.mz}};
}

// Boundary part of the shift as the free-space interaction between atom A and
// the image of atom B. Valid for arbitrary geometry; serves as the oracle for
// the explicit closed forms below and as the evaluator for general geometries.
inline double boundary_term_via_image(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                      double k0, const PairGeometry &g, BellParity parity) {
  validate_geometry(g);
  const ImageSystem img = image_of(g.pos_b, mu_b);
  return free_space_energy(mu_a, img.dipole, k0, img.position - g.pos_a, parity);
}

// Explicit boundary term for the perpendicular configuration. The image
// distance is Rcal = L + 2z; transverse components flip sign relative to the
// free-space kernel, the longitudinal one does not.
inline double boundary_term_perpendicular(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                          double k0, double separation_l, double height_z,
                                          BellParity parity) {
  if (!(separation_l > 0.0))
    throw ZeroSeparation("boundary_term_perpendicular: L must be > 0");
  if (!(height_z > 0.0))
    throw AtomOnOrBehindMirror("boundary_term_perpendicular: z must be > 0");
  const double rr = separation_l + 2.0 * height_z;
  const double y = k0 * rr;
  const double trans = -std::cos(y) - y * std::sin(y) + y * y * std::cos(y);
  const double longi = -2.0 * (y * std::sin(y) + std::cos(y));
  const double pref = parity_sign(parity) / (4.0 * std::numbers::pi * rr * rr * rr);
  return pref * ((mu_a.mx * mu_b.mx + mu_a.my * mu_b.my) * trans + mu_a.mz * mu_b.mz * longi);
}

// Explicit boundary term for the parallel configuration (separation D along y,
// both atoms at height z, R = sqrt(D^2 + 4z^2)). Includes the non-diagonal
// term proportional to (muA_y muB_z - muA_z muB_y), which has no free-space
// counterpart.
inline double boundary_term_parallel(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                     double k0, double separation_d, double height_z,
                                     BellParity parity) {
  if (!(separation_d > 0.0))
    throw ZeroSeparation("boundary_term_parallel: D must be > 0");
  if (!(height_z > 0.0))
    throw AtomOnOrBehindMirror("boundary_term_parallel: z must be > 0");
  const double d = separation_d, z = height_z;
  const double r = std::hypot(d, 2.0 * z);
  const double y = k0 * r;
  const double c = std::cos(y), s = std::sin(y);
  const double r3 = r * r * r, r5 = r3 * r * r;
  const double d2 = d * d, z2 = z * z;

  const double xx = (-c - y * s + y * y * c) / r3;
  const double zz = ((d2 - 8.0 * z2) * (c + y * s) - d2 * y * y * c) / r5;
  const double yy = (2.0 * (d2 - 2.0 * z2) * (c + y * s) + 4.0 * z2 * y * y * c) / r5;
  const double yz = (6.0 * z * d * (c + y * s) - 2.0 * z * d * y * y * c) / r5;

  return parity_sign(parity) / (4.0 * std::numbers::pi) *
         (mu_a.mx * mu_b.mx * xx + mu_a.mz * mu_b.mz * zz + mu_a.my * mu_b.my * yy +
          (mu_a.my * mu_b.mz - mu_a.mz * mu_b.my) * yz);
}

namespace detail {

// Express a dipole in the frame whose y axis is the in-plane unit vector u
// (x' = u x zhat, y' = u, z' = zhat). Used to apply the parallel closed form
// when the separation lies along an arbitrary in-plane direction.
inline DipoleVector to_parallel_frame(const DipoleVector &mu, Vec3 u) {
  const Vec3 xp{u.y, -u.x, 0.0};
  return {mu.mx * xp.x + mu.my * xp.y, mu.mx * u.x + mu.my * u.y, mu.mz};
}

} // namespace detail

// Total resonance shift near the mirror: free-space part from the general
// tensor on s = pos_b - pos_a, boundary part from the explicit closed form
// when the geometry is axis-aligned, otherwise from the image construction.
inline EnergyBreakdown total_energy(const DipoleVector &mu_a, const DipoleVector &mu_b, double k0,
                                    const PairGeometry &g, BellParity parity) {
  validate_geometry(g);
  const Vec3 s = g.pos_b - g.pos_a;
  const double free = free_space_energy(mu_a, mu_b, k0, s, parity);

  const Configuration cfg = classify_configuration(g);
  double boundary = 0.0;
  switch (cfg.kind) {
  case ConfigKind::Perpendicular:
    boundary = boundary_term_perpendicular(mu_a, mu_b, k0, cfg.separation, cfg.height, parity);
    break;
  case ConfigKind::Parallel: {
    const double r_plane = std::hypot(s.x, s.y);
    const Vec3 u{s.x / r_plane, s.y / r_plane, 0.0};
    boundary = boundary_term_parallel(detail::to_parallel_frame(mu_a, u),
                                      detail::to_parallel_frame(mu_b, u), k0, cfg.separation,
                                      cfg.height, parity);
    break;
  }
  case ConfigKind::General:
    boundary = boundary_term_via_image(mu_a, mu_b, k0, g, parity);
    break;
  }
  return {free, boundary, free + boundary};
}

// Image distance actually used by the boundary evaluators: L + 2z for the
// perpendicular case, sqrt(D^2 + 4z^2) for the parallel one, |image(B) - A|
// in general.
inline double image_distance(const PairGeometry &g) {
  return Vec3{g.pos_b.x - g.pos_a.x, g.pos_b.y - g.pos_a.y, -g.pos_b.z - g.pos_a.z}.norm();
}

} // namespace resdd
