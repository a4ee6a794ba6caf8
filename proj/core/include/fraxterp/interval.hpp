#pragma once

#include <string>

#include "fraxterp/extended_point.hpp"

namespace fraxterp {

/**
 * An interval of the extended line with per-endpoint closure flags.
 * Closure flags matter for piece membership (half-open images decide which
 * piece owns a shared boundary point); most geometric checks use the closure.
 */
struct Interval {
  ExtendedPoint lo;
  ExtendedPoint hi;
  bool closed_lo = true;
  bool closed_hi = true;

  static Interval closed(double a, double b);
  static Interval make(ExtendedPoint lo, ExtendedPoint hi, bool closed_lo = true,
                       bool closed_hi = true);

  /// Membership honoring the closure flags.
  bool contains(const ExtendedPoint& x) const;
  /// Membership in the closure [lo, hi], ignoring flags.
  bool closure_contains(const ExtendedPoint& x) const;
  /// Strict interior membership.
  bool interior_contains(const ExtendedPoint& x) const;

  bool is_degenerate() const { return lo == hi; }
  bool has_end_marker() const { return lo.is_end_marker() || hi.is_end_marker(); }

  std::string str() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.closed_lo == b.closed_lo &&
           a.closed_hi == b.closed_hi;
  }
};

}  // namespace fraxterp
