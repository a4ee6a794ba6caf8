#include "fraxterp/ambient.hpp"

#include <cmath>

#include "fraxterp/errors.hpp"

namespace fraxterp {

Ambient Ambient::half_line() {
  return Ambient(AmbientKind::HalfLine,
                 Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf()));
}

Ambient Ambient::real_line() {
  return Ambient(AmbientKind::RealLine,
                 Interval::make(ExtendedPoint::minus_inf(), ExtendedPoint::plus_inf()));
}

Ambient Ambient::compact(double a, double b) {
  if (!(a < b)) throw StructuralError("Ambient::compact: requires a < b");
  return Ambient(AmbientKind::CompactInterval, Interval::closed(a, b));
}

int Ambient::unbounded_component_count() const {
  switch (kind_) {
    case AmbientKind::HalfLine: return 1;
    case AmbientKind::RealLine: return 2;
    case AmbientKind::CompactInterval: return 0;
  }
  return 0;
}

double Ambient::to_unit(const ExtendedPoint& x) const {
  switch (kind_) {
    case AmbientKind::HalfLine:
      if (x.is_plus_inf()) return 1.0;
      if (x.is_minus_inf()) throw DomainError("to_unit: -inf outside half line");
      return x.value() / (1.0 + x.value());
    case AmbientKind::RealLine: {
      if (x.is_plus_inf()) return 1.0;
      if (x.is_minus_inf()) return -1.0;
      double v = x.value();
      return v / (1.0 + std::fabs(v));
    }
    case AmbientKind::CompactInterval:
      return x.value();  // throws on end markers
  }
  return 0.0;
}

ExtendedPoint Ambient::from_unit(double u) const {
  switch (kind_) {
    case AmbientKind::HalfLine:
      if (u >= 1.0) return ExtendedPoint::plus_inf();
      if (u < 0.0) throw DomainError("from_unit: negative unit coordinate on half line");
      return ExtendedPoint::finite(u / (1.0 - u));
    case AmbientKind::RealLine:
      if (u >= 1.0) return ExtendedPoint::plus_inf();
      if (u <= -1.0) return ExtendedPoint::minus_inf();
      return ExtendedPoint::finite(u / (1.0 - std::fabs(u)));
    case AmbientKind::CompactInterval:
      return ExtendedPoint::finite(u);
  }
  return ExtendedPoint::finite(0.0);
}

double Ambient::unit_lo() const {
  switch (kind_) {
    case AmbientKind::HalfLine: return 0.0;
    case AmbientKind::RealLine: return -1.0;
    case AmbientKind::CompactInterval: return extent_.lo.value();
  }
  return 0.0;
}

double Ambient::unit_hi() const {
  switch (kind_) {
    case AmbientKind::HalfLine: return 1.0;
    case AmbientKind::RealLine: return 1.0;
    case AmbientKind::CompactInterval: return extent_.hi.value();
  }
  return 1.0;
}

}  // namespace fraxterp
