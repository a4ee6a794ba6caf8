#include "fraxterp/extended_point.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

ExtendedPoint ExtendedPoint::finite(double v) {
  if (!std::isfinite(v)) throw StructuralError("ExtendedPoint::finite: value is not finite");
  return ExtendedPoint(0, v);
}

ExtendedPoint ExtendedPoint::from_double(double v) {
  if (std::isnan(v)) throw StructuralError("ExtendedPoint::from_double: NaN");
  if (std::isinf(v)) return v > 0 ? plus_inf() : minus_inf();
  return ExtendedPoint(0, v);
}

ExtendedPoint ExtendedPoint::plus_inf() { return ExtendedPoint(+1, 0.0); }
ExtendedPoint ExtendedPoint::minus_inf() { return ExtendedPoint(-1, 0.0); }

double ExtendedPoint::value() const {
  if (tag_ != 0) throw DomainError("ExtendedPoint::value: end marker has no finite value");
  return v_;
}

double ExtendedPoint::as_double() const {
  if (tag_ > 0) return std::numeric_limits<double>::infinity();
  if (tag_ < 0) return -std::numeric_limits<double>::infinity();
  return v_;
}

std::string ExtendedPoint::str() const {
  if (tag_ > 0) return "inf";
  if (tag_ < 0) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v_);
  return buf;
}

std::ostream& operator<<(std::ostream& os, const ExtendedPoint& p) { return os << p.str(); }

}  // namespace fraxterp
