#pragma once

#include <algorithm>
#include <cmath>

#include "resdd/errors.hpp"
#include "resdd/linalg.hpp"

namespace resdd {

// Natural units: hbar = c = 1. Energies in eV, lengths in eV^-1.
// 1 eV^-1 = hbar*c / eV expressed in meters.
inline constexpr double ev_inverse_in_meters = 1.973269804e-7;

// Relative tolerance on the misalignment angle used when classifying a
// geometry as perpendicular or parallel to the mirror.
inline constexpr double classification_tolerance = 1e-12;

// Transition dipole matrix element components, eV^-1. Real by convention;
// magnitude zero is allowed (the interaction is bilinear in the dipoles).
struct DipoleVector {
  double mx{}, my{}, mz{};

  constexpr double operator[](int i) const { return i == 0 ? mx : (i == 1 ? my : mz); }
  double norm() const { return std::hypot(mx, my, mz); }
  bool finite() const { return std::isfinite(mx) && std::isfinite(my) && std::isfinite(mz); }

  friend constexpr bool operator==(DipoleVector a, DipoleVector b) {
    return a.mx == b.mx && a.my == b.my && a.mz == b.mz;
  }
};

// Atomic transition frequency omega0 > 0, eV. Evaluators that admit the
// k0 = 0 static limit take a plain double instead.
struct TransitionFrequency {
  explicit TransitionFrequency(double omega0_ev) : value(omega0_ev) {
    if (!(omega0_ev > 0.0) || !std::isfinite(omega0_ev))
      throw InvalidParameter("TransitionFrequency: omega0 must be finite and > 0");
  }
  double value;
};

// Positions of atoms A and B in the half-space z > 0, eV^-1.
// The mirror is fixed at z = 0 with normal n = (0,0,1).
struct PairGeometry {
  Vec3 pos_a{}, pos_b{};
};

// Bell-state parity: |psi+-> = (|g_A e_B> +- |e_A g_B>)/sqrt(2).
enum class BellParity { Symmetric, Antisymmetric };

constexpr double parity_sign(BellParity p) {
  return p == BellParity::Symmetric ? 1.0 : -1.0;
}

// Energy shift split into its free-space and boundary-induced parts, eV.
// total = free_space + boundary by construction.
struct EnergyBreakdown {
  double free_space{};
  double boundary{};
  double total{};
};

inline const PairGeometry &validate_geometry(const PairGeometry &g) {
  if (!g.pos_a.finite() || !g.pos_b.finite())
    throw InvalidParameter("validate_geometry: nonfinite position");
  if (!(g.pos_a.z > 0.0))
    throw AtomOnOrBehindMirror("validate_geometry: atom A has z <= 0");
  if (!(g.pos_b.z > 0.0))
    throw AtomOnOrBehindMirror("validate_geometry: atom B has z <= 0");
  if ((g.pos_b - g.pos_a).norm() == 0.0)
    throw CoincidentAtoms("validate_geometry: atoms coincide");
  return g;
}

enum class ConfigKind { Perpendicular, Parallel, General };

// Result of matching a geometry against the two axis-aligned configurations.
//  Perpendicular: separation parallel to the mirror normal; separation = L,
//                 height = min(z_A, z_B).
//  Parallel:      separation in the mirror plane at equal heights;
//                 separation = D, height = z.
//  General:       anything else; separation = |s|, height = min(z_A, z_B).
struct Configuration {
  ConfigKind kind;
  double separation;
  double height;
};

// Expects a validated geometry.
inline Configuration classify_configuration(const PairGeometry &g) {
  const Vec3 s = g.pos_b - g.pos_a;
  const double r = s.norm();
  const double r_plane = std::hypot(s.x, s.y);
  const double zmin = std::min(g.pos_a.z, g.pos_b.z);
  if (r_plane <= classification_tolerance * r)
    return {ConfigKind::Perpendicular, r, zmin};
  if (std::abs(s.z) <= classification_tolerance * r)
    return {ConfigKind::Parallel, r, 0.5 * (g.pos_a.z + g.pos_b.z)};
  return {ConfigKind::General, r, zmin};
}

} // namespace resdd
