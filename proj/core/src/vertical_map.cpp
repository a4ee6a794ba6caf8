#include "fraxterp/vertical_map.hpp"

#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"
#include "probing.hpp"

namespace fraxterp {

VerticalMap VerticalMap::affine(ScalarFunction offset, ScalarFunction scale) {
  if (!(offset.domain() == scale.domain()))
    throw StructuralError("vertical map: offset and scale domains differ");
  VerticalMap v;
  v.affine_ = true;
  v.piece_domain_ = offset.domain();
  v.lip_ = scale.sup_abs();
  v.offset_sup_ = offset.sup_abs();
  v.offset_ = std::move(offset);
  v.scale_ = std::move(scale);
  return v;
}

VerticalMap VerticalMap::general(std::function<double(double, double)> rule, double lip_y,
                                 const Interval& piece_domain, int probes) {
  if (!rule) throw StructuralError("vertical map: empty rule");
  if (!(lip_y >= 0.0) || !std::isfinite(lip_y))
    throw StructuralError("vertical map: Lipschitz constant must be finite and nonnegative");

  // Spot-check the declared Lipschitz constant on probe triples.
  double sup0 = 0.0;
  for (int i = 0; i < probes; ++i) {
    double x = detail::interior_point(piece_domain, (i + 0.5) / probes);
    sup0 = std::max(sup0, std::fabs(rule(x, 0.0)));
    for (int j = 0; j < 8; ++j) {
      double y1 = -4.0 + j, y2 = y1 + 0.7;
      double dv = std::fabs(rule(x, y1) - rule(x, y2));
      if (dv > lip_y * std::fabs(y1 - y2) + 1e-12) {
        std::ostringstream oss;
        oss << "vertical map: rule violates declared Lipschitz bound " << lip_y << " at x = " << x;
        throw StructuralError(oss.str());
      }
    }
  }

  VerticalMap v;
  v.affine_ = false;
  v.rule_ = std::move(rule);
  v.piece_domain_ = piece_domain;
  v.lip_ = lip_y;
  v.offset_sup_ = sup0;
  return v;
}

double VerticalMap::apply(const ExtendedPoint& xi, double y) const {
  if (affine_) return offset_->eval(xi) + scale_->eval(xi) * y;
  if (xi.is_end_marker())
    throw DomainError("vertical map: general rules take finite arguments only");
  return rule_(xi.value(), y);
}

double VerticalMap::step_factor(const ExtendedPoint& xi) const {
  if (affine_) return std::fabs(scale_->eval(xi));
  return lip_;
}

const ScalarFunction& VerticalMap::offset() const {
  if (!affine_) throw StructuralError("vertical map: general rule has no offset part");
  return *offset_;
}

const ScalarFunction& VerticalMap::scale() const {
  if (!affine_) throw StructuralError("vertical map: general rule has no scale part");
  return *scale_;
}

}  // namespace fraxterp
