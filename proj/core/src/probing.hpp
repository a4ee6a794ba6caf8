#pragma once

// Private helpers for probing possibly-unbounded intervals with finite points.

#include <cmath>

#include "fraxterp/interval.hpp"

namespace fraxterp::detail {

inline double edge_slack(double x) { return 1e-9 * (1.0 + std::fabs(x)); }

/// Stretches t in (0,1) onto the interior of an interval of the extended line.
inline double interior_point(const Interval& iv, double t) {
  bool lo_fin = iv.lo.is_finite();
  bool hi_fin = iv.hi.is_finite();
  if (lo_fin && hi_fin) return iv.lo.value() + (iv.hi.value() - iv.lo.value()) * t;
  if (lo_fin) return iv.lo.value() + t / (1.0 - t);
  if (hi_fin) return iv.hi.value() - (1.0 - t) / t;
  double s = 2.0 * t - 1.0;
  return s / (1.0 - std::fabs(s));
}

inline double clamp_finite(const Interval& iv, double x) {
  if (iv.lo.is_finite() && x < iv.lo.value()) return iv.lo.value();
  if (iv.hi.is_finite() && x > iv.hi.value()) return iv.hi.value();
  return x;
}

}  // namespace fraxterp::detail
