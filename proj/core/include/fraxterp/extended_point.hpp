#pragma once

#include <iosfwd>
#include <string>

namespace fraxterp {

/**
 * A point of the extended real line: a finite IEEE double or one of the two
 * end markers.  NaN is rejected at every construction point, so a valid
 * ExtendedPoint always has a total order.
 */
class ExtendedPoint {
 public:
  ExtendedPoint() : tag_(0), v_(0.0) {}

  static ExtendedPoint finite(double v);       // throws StructuralError on NaN/inf
  static ExtendedPoint from_double(double v);  // maps IEEE +-inf to end markers
  static ExtendedPoint plus_inf();
  static ExtendedPoint minus_inf();

  bool is_finite() const { return tag_ == 0; }
  bool is_plus_inf() const { return tag_ > 0; }
  bool is_minus_inf() const { return tag_ < 0; }
  bool is_end_marker() const { return tag_ != 0; }

  /// Finite payload; throws DomainError on an end marker.
  double value() const;

  /// Finite payload or IEEE +-infinity for the markers.
  double as_double() const;

  std::string str() const;

  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
    return a.tag_ == b.tag_ && (a.tag_ != 0 || a.v_ == b.v_);
  }
  friend bool operator!=(const ExtendedPoint& a, const ExtendedPoint& b) { return !(a == b); }
  friend bool operator<(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.tag_ != b.tag_) return a.tag_ < b.tag_;
    return a.tag_ == 0 && a.v_ < b.v_;
  }
  friend bool operator<=(const ExtendedPoint& a, const ExtendedPoint& b) { return a < b || a == b; }
  friend bool operator>(const ExtendedPoint& a, const ExtendedPoint& b) { return b < a; }
  friend bool operator>=(const ExtendedPoint& a, const ExtendedPoint& b) { return b <= a; }

 private:
  ExtendedPoint(int tag, double v) : tag_(tag), v_(v) {}
  int tag_;  // -1, 0, +1
  double v_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedPoint& p);

}  // namespace fraxterp
