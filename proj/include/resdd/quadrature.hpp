#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "resdd/errors.hpp"

namespace resdd::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::int64_t evaluations = 0;

  Result &operator+=(const Result &o) {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    return *this;
  }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

} // namespace detail

// One Gauss-Kronrod 15(7) panel. The reported error is the plain difference
// between the two embedded rules.
template <class F> Result gk15(F &&f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const double fc = f(c);
  double resk = detail::kronrod_weights[7] * fc;
  double resg = detail::gauss_weights[3] * fc;
  for (int k = 0; k < 7; ++k) {
    const double dx = h * detail::gk_nodes[static_cast<std::size_t>(k)];
    const double sum = f(c - dx) + f(c + dx);
    resk += detail::kronrod_weights[static_cast<std::size_t>(k)] * sum;
    if (k % 2 == 1)
      resg += detail::gauss_weights[static_cast<std::size_t>(k / 2)] * sum;
  }
  return {resk * h, std::abs(resk - resg) * std::abs(h), 15};
}

// Adaptive bisection on top of gk15. A segment is accepted when its
// error estimate drops below max(abs_tol, rel_tol * |segment value|);
// the absolute budget halves on each split.
template <class F>
Result integrate_adaptive(F &&f, double a, double b, double abs_tol, double rel_tol,
                          int max_depth = 42) {
  Result r = gk15(f, a, b);
  if (r.error <= std::max(abs_tol, rel_tol * std::abs(r.value)) || max_depth <= 0)
    return r;
  const double m = 0.5 * (a + b);
  if (!(a < m && m < b))
    return r; // interval no longer splittable in double precision
  Result left = integrate_adaptive(f, a, m, 0.5 * abs_tol, rel_tol, max_depth - 1);
  Result right = integrate_adaptive(f, m, b, 0.5 * abs_tol, rel_tol, max_depth - 1);
  left += right;
  left.evaluations += r.evaluations;
  return left;
}

// Fixed-width panel march over [a, b]; each panel gets a shallow adaptive
// treatment. Panels are summed left to right so results are deterministic.
template <class F>
Result integrate_panels(F &&f, double a, double b, double panel_width, double abs_tol,
                        double rel_tol) {
  Result total;
  if (!(panel_width > 0.0))
    throw InvalidParameter("integrate_panels: panel width must be > 0");
  const auto n_panels = static_cast<std::int64_t>(std::ceil((b - a) / panel_width));
  const double per_panel_tol = abs_tol / std::max<double>(1.0, static_cast<double>(n_panels));
  double x = a;
  while (x < b) {
    const double x2 = std::min(x + panel_width, b);
    total += integrate_adaptive(f, x, x2, per_panel_tol, rel_tol, 12);
    x = x2;
  }
  return total;
}

// Polynomial (Neville) extrapolation of y(x) to x = 0. diagonal[k] is the
// degree-k extrapolant built from the first k+1 nodes; the uncertainty is
// the spread across the last two extrapolants.
struct Extrapolation {
  double value = 0.0;
  double uncertainty = 0.0;
  std::vector<double> diagonal;
};

inline Extrapolation extrapolate_to_zero(const std::vector<double> &x,
                                         const std::vector<double> &y) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n)
    throw InvalidParameter("extrapolate_to_zero: empty or mismatched inputs");
  Extrapolation out;
  std::vector<double> row = y;
  out.diagonal.push_back(row[0]);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      row[i] = (x[i - j] * row[i] - x[i] * row[i - 1]) / (x[i - j] - x[i]);
      if (i == j)
        break;
    }
    out.diagonal.push_back(row[j]);
  }
  out.value = out.diagonal.back();
  out.uncertainty = n >= 2 ? std::abs(out.diagonal[n - 1] - out.diagonal[n - 2])
                           : std::abs(out.value);
  return out;
}

} // namespace resdd::quad
