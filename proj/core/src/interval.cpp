#include "fraxterp/interval.hpp"

#include <sstream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

Interval Interval::closed(double a, double b) {
  return make(ExtendedPoint::from_double(a), ExtendedPoint::from_double(b));
}

Interval Interval::make(ExtendedPoint lo, ExtendedPoint hi, bool closed_lo, bool closed_hi) {
  if (hi < lo) {
    std::ostringstream oss;
    oss << "Interval: lo " << lo << " exceeds hi " << hi;
    throw StructuralError(oss.str());
  }
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.closed_lo = closed_lo;
  iv.closed_hi = closed_hi;
  return iv;
}

bool Interval::contains(const ExtendedPoint& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !closed_lo && !(x == hi && closed_hi)) return false;
  if (x == hi && !closed_hi && !(x == lo && closed_lo)) return false;
  return true;
}

bool Interval::closure_contains(const ExtendedPoint& x) const { return lo <= x && x <= hi; }

bool Interval::interior_contains(const ExtendedPoint& x) const { return lo < x && x < hi; }

std::string Interval::str() const {
  std::ostringstream oss;
  oss << (closed_lo ? '[' : '(') << lo << ", " << hi << (closed_hi ? ']' : ')');
  return oss.str();
}

}  // namespace fraxterp
