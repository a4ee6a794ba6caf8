#pragma once

#include "fraxterp/interval.hpp"

namespace fraxterp {

enum class AmbientKind { HalfLine, RealLine, CompactInterval };

/**
 * The ambient 1-D domain of a partition scheme, together with the bounded
 * coordinate chart used for all tolerance comparisons and uniform grids.
 *
 * Unit coordinates:
 *   half line        u(x) = x / (1 + x)          maps [0, inf]  -> [0, 1]
 *   real line        u(x) = x / (1 + |x|)        maps [-inf, inf] -> [-1, 1]
 *   compact [a, b]   u(x) = x                    (identity)
 */
class Ambient {
 public:
  static Ambient half_line();
  static Ambient real_line();
  static Ambient compact(double a, double b);

  AmbientKind kind() const { return kind_; }
  const Interval& extent() const { return extent_; }

  /// Number of unbounded components of the ambient space.
  int unbounded_component_count() const;

  double to_unit(const ExtendedPoint& x) const;
  ExtendedPoint from_unit(double u) const;
  double unit_lo() const;
  double unit_hi() const;
  double unit_span() const { return unit_hi() - unit_lo(); }

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.kind_ == b.kind_ && a.extent_ == b.extent_;
  }

 private:
  Ambient(AmbientKind k, Interval e) : kind_(k), extent_(e) {}
  AmbientKind kind_;
  Interval extent_;
};

}  // namespace fraxterp
