#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "resdd/core.hpp"
#include "resdd/errors.hpp"
#include "resdd/mirror.hpp"

namespace resdd {

// The near/far boundaries are artifact choices; the physics statements are
// only asymptotic (k0*distance << 1 resp. >> 1).
struct ZoneThresholds {
  double near_threshold = 1e-2;
  double far_threshold = 10.0;
};

enum class Zone { NearZone, FarZone, Intermediate };

struct ZoneClassification {
  Zone regime;
  double k_separation;    // k0 * (L or D)
  double k_image;         // k0 * (Rcal or R)
};

inline ZoneClassification classify_zone(double k0, double separation, double image_distance,
                                        ZoneThresholds thresholds = {}) {
  const double ks = k0 * separation;
  const double ki = k0 * image_distance;
  Zone regime = Zone::Intermediate;
  if (ks < thresholds.near_threshold && ki < thresholds.near_threshold)
    regime = Zone::NearZone;
  else if (ks > thresholds.far_threshold)
    regime = Zone::FarZone;
  return {regime, ks, ki};
}

// Near-zone shift for the perpendicular configuration (k0 L << 1, k0 Rcal << 1):
// +- (1/4pi) [(muA_x muB_x + muA_y muB_y)(1/L^3 - 1/Rcal^3)
//             - 2 muA_z muB_z (1/L^3 + 1/Rcal^3)].
inline double near_zone_perpendicular(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                      double separation_l, double height_z, BellParity parity) {
  if (!(separation_l > 0.0))
    throw ZeroSeparation("near_zone_perpendicular: L must be > 0");
  if (!(height_z > 0.0))
    throw AtomOnOrBehindMirror("near_zone_perpendicular: z must be > 0");
  const double l3 = 1.0 / (separation_l * separation_l * separation_l);
  const double rr = separation_l + 2.0 * height_z;
  const double r3 = 1.0 / (rr * rr * rr);
  return parity_sign(parity) / (4.0 * std::numbers::pi) *
         ((mu_a.mx * mu_b.mx + mu_a.my * mu_b.my) * (l3 - r3) -
          2.0 * mu_a.mz * mu_b.mz * (l3 + r3));
}

// Near-zone shift for the parallel configuration, obtained as the exact
// k0 -> 0 limit of the full boundary expression (all boundary denominators
// are powers of R = sqrt(D^2 + 4z^2)).
inline double near_zone_parallel(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                 double separation_d, double height_z, BellParity parity) {
  if (!(separation_d > 0.0))
    throw ZeroSeparation("near_zone_parallel: D must be > 0");
  if (!(height_z > 0.0))
    throw AtomOnOrBehindMirror("near_zone_parallel: z must be > 0");
  const double d = separation_d, z = height_z;
  const double d3 = 1.0 / (d * d * d);
  const double r = std::hypot(d, 2.0 * z);
  const double r3 = 1.0 / (r * r * r);
  const double r5 = r3 / (r * r);
  const double d2 = d * d, z2 = z * z;
  return parity_sign(parity) / (4.0 * std::numbers::pi) *
         (mu_a.mx * mu_b.mx * (d3 - r3) +
          mu_a.my * mu_b.my * (-2.0 * d3 + 2.0 * (d2 - 2.0 * z2) * r5) +
          mu_a.mz * mu_b.mz * (d3 + (d2 - 8.0 * z2) * r5) +
          (mu_a.my * mu_b.mz - mu_a.mz * mu_b.my) * 6.0 * z * d * r5);
}

// total / free_space. Parity-independent (the sign cancels) and invariant
// under global rescaling of both dipoles.
inline double enhancement_ratio(const DipoleVector &mu_a, const DipoleVector &mu_b, double k0,
                                const PairGeometry &g, BellParity parity) {
  const EnergyBreakdown e = total_energy(mu_a, mu_b, k0, g, parity);
  if (e.free_space == 0.0)
    throw FreeSpacePartZero("enhancement_ratio: free-space part vanishes");
  return e.total / e.free_space;
}

// --- far-zone oscillation probe ------------------------------------------

enum class ScanAxis { Separation, Height };

// A one-dimensional scan of an axis-aligned geometry family.
//  Separation: sweep L (perpendicular) or D (parallel) at fixed height.
//  Height:     sweep z at fixed separation.
struct FarZoneScan {
  ConfigKind kind = ConfigKind::Perpendicular; // Perpendicular or Parallel
  ScanAxis axis = ScanAxis::Separation;
  double fixed_value = 0.0; // z for Separation scans, L/D for Height scans
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

struct EnvelopeSample {
  double position;  // swept value where the per-period maximum occurs
  double magnitude; // max |energy| over that period
};

struct OscillationReport {
  std::vector<double> total_sign_changes;    // interpolated swept values
  std::vector<double> free_sign_changes;
  std::vector<double> boundary_sign_changes;
  std::vector<EnvelopeSample> total_envelope;
  std::vector<EnvelopeSample> free_envelope;
};

namespace detail {

inline PairGeometry scan_geometry(const FarZoneScan &scan, double swept) {
  const double sep = scan.axis == ScanAxis::Separation ? swept : scan.fixed_value;
  const double z = scan.axis == ScanAxis::Separation ? scan.fixed_value : swept;
  if (scan.kind == ConfigKind::Perpendicular)
    return {{0.0, 0.0, z}, {0.0, 0.0, z + sep}};
  return {{0.0, 0.0, z}, {0.0, sep, z}};
}

inline void collect_sign_changes(const std::vector<double> &x, const std::vector<double> &v,
                                 std::vector<double> &out) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] == 0.0 || std::signbit(v[i - 1]) == std::signbit(v[i]))
      continue;
    const double t = v[i - 1] / (v[i - 1] - v[i]);
    out.push_back(x[i - 1] + t * (x[i] - x[i - 1]));
  }
}

inline void collect_envelope(const std::vector<double> &x, const std::vector<double> &v,
                             double period, std::vector<EnvelopeSample> &out) {
  if (!(period > 0.0) || x.empty())
    return;
  const double x0 = x.front();
  std::size_t i = 0;
  for (int m = 0;; ++m) {
    const double hi = x0 + (m + 1) * period;
    if (hi > x.back())
      break;
    EnvelopeSample best{x[i], -1.0};
    for (; i < x.size() && x[i] <= hi; ++i) {
      if (std::abs(v[i]) > best.magnitude)
        best = {x[i], std::abs(v[i])};
    }
    out.push_back(best);
  }
}

} // namespace detail

// Samples the total/free/boundary energies over the scan and reports sign
// changes plus per-period envelope maxima. The oscillation period in the
// swept variable is 2pi/k0 for separation scans and pi/k0 for height scans
// (the boundary phase advances as 2 k0 z).
inline OscillationReport far_zone_probe(const DipoleVector &mu_a, const DipoleVector &mu_b,
                                        double k0, const FarZoneScan &scan, BellParity parity) {
  if (scan.points < 2 || !(scan.start < scan.stop))
    throw EmptyScanRange("far_zone_probe: need points >= 2 and start < stop");
  if (!(k0 > 0.0))
    throw InvalidParameter("far_zone_probe: k0 must be > 0");

  std::vector<double> x(static_cast<std::size_t>(scan.points));
  std::vector<double> total(x.size()), free(x.size()), boundary(x.size());
  const double step = (scan.stop - scan.start) / (scan.points - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = scan.start + static_cast<double>(i) * step;
    const EnergyBreakdown e = total_energy(mu_a, mu_b, k0, detail::scan_geometry(scan, x[i]), parity);
    total[i] = e.total;
    free[i] = e.free_space;
    boundary[i] = e.boundary;
  }

  OscillationReport report;
  detail::collect_sign_changes(x, total, report.total_sign_changes);
  detail::collect_sign_changes(x, free, report.free_sign_changes);
  detail::collect_sign_changes(x, boundary, report.boundary_sign_changes);
  const double period =
      scan.axis == ScanAxis::Separation ? 2.0 * std::numbers::pi / k0 : std::numbers::pi / k0;
  detail::collect_envelope(x, total, period, report.total_envelope);
  detail::collect_envelope(x, free, period, report.free_envelope);
  return report;
}

} // namespace resdd
