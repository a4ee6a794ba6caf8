#include "fraxterp/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"
#include "probing.hpp"

namespace fraxterp {

ScalarFunction ScalarFunction::constant(double c, const Interval& domain) {
  if (!std::isfinite(c)) throw StructuralError("constant function: value must be finite");
  ScalarFunction f;
  f.kind_ = ScalarKind::Constant;
  f.pa_ = c;
  f.domain_ = domain;
  return f;
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs, const Interval& domain) {
  if (coeffs.empty()) throw StructuralError("polynomial: needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw StructuralError("polynomial: coefficients must be finite");
  ScalarFunction f;
  f.kind_ = ScalarKind::Polynomial;
  f.coeffs_ = std::move(coeffs);
  f.domain_ = domain;
  return f;
}

ScalarFunction ScalarFunction::hat(double height, double center, const Interval& domain) {
  if (!(height > 0.0) || !std::isfinite(center))
    throw StructuralError("hat function: height must be positive, center finite");
  ScalarFunction f;
  f.kind_ = ScalarKind::Hat;
  f.pa_ = height;
  f.pb_ = center;
  f.domain_ = domain;
  return f;
}

ScalarFunction ScalarFunction::piecewise(std::vector<double> breaks,
                                         std::vector<ScalarFunction> parts,
                                         const Interval& domain) {
  if (parts.size() != breaks.size() + 1)
    throw StructuralError("piecewise: need exactly breaks + 1 sub-rules");
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      throw StructuralError("piecewise: breakpoints must be strictly increasing");
  for (double b : breaks)
    if (!domain.interior_contains(ExtendedPoint::finite(b)))
      throw StructuralError("piecewise: breakpoints must lie in the domain interior");
  ScalarFunction f;
  f.kind_ = ScalarKind::Piecewise;
  f.breaks_ = std::move(breaks);
  f.parts_ = std::move(parts);
  f.domain_ = domain;
  return f;
}

ScalarFunction ScalarFunction::rational_tail(double numerator, const Interval& domain) {
  if (!std::isfinite(numerator)) throw StructuralError("rational tail: numerator must be finite");
  bool away_from_zero =
      (domain.lo.is_finite() && domain.lo.value() > 0.0) || domain.lo.is_plus_inf() ||
      (domain.hi.is_finite() && domain.hi.value() < 0.0) || domain.hi.is_minus_inf();
  if (!away_from_zero)
    throw StructuralError("rational tail: domain closure must not reach 0");
  ScalarFunction f;
  f.kind_ = ScalarKind::RationalTail;
  f.pa_ = numerator;
  f.domain_ = domain;
  return f;
}

ScalarFunction ScalarFunction::composed(ScalarFunction outer, Homeomorphism1D map) {
  const Interval& mid = map.codomain();
  const Interval& od = outer.domain();
  auto inside = [&](const ExtendedPoint& p) {
    if (p.is_end_marker()) return od.closure_contains(p);
    return (!od.lo.is_finite() || p.value() >= od.lo.value() - detail::edge_slack(p.value())) &&
           (!od.hi.is_finite() || p.value() <= od.hi.value() + detail::edge_slack(p.value()));
  };
  if (!inside(mid.lo) || !inside(mid.hi)) {
    std::ostringstream oss;
    oss << "composed function: map image " << mid.str() << " escapes outer domain " << od.str();
    throw StructuralError(oss.str());
  }
  ScalarFunction f;
  f.kind_ = ScalarKind::Composed;
  f.domain_ = map.domain();
  f.outer_ = std::make_shared<ScalarFunction>(std::move(outer));
  f.map_ = std::make_shared<Homeomorphism1D>(std::move(map));
  return f;
}

ScalarFunction ScalarFunction::callable(std::function<double(double)> fn, const Interval& domain,
                                        std::optional<double> limit_at_minus_inf,
                                        std::optional<double> limit_at_plus_inf,
                                        std::vector<double> breakpoint_hints) {
  if (!fn) throw StructuralError("callable function: empty rule");
  ScalarFunction f;
  f.kind_ = ScalarKind::Callable;
  f.fn_ = std::move(fn);
  f.domain_ = domain;
  f.limit_lo_ = limit_at_minus_inf;
  f.limit_hi_ = limit_at_plus_inf;
  f.hints_ = std::move(breakpoint_hints);
  return f;
}

double ScalarFunction::eval_finite(double x) const {
  switch (kind_) {
    case ScalarKind::Constant: return pa_;
    case ScalarKind::Polynomial: {
      double acc = 0.0;
      for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
      return acc;
    }
    case ScalarKind::Hat: return std::max(pa_ - std::fabs(x - pb_), 0.0);
    case ScalarKind::Piecewise: {
      size_t idx = std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
      return parts_[idx].eval(ExtendedPoint::finite(x));
    }
    case ScalarKind::RationalTail: return pa_ / x;
    case ScalarKind::Composed: return outer_->eval(map_->forward(ExtendedPoint::finite(x)));
    case ScalarKind::Callable: return fn_(x);
  }
  return 0.0;
}

double ScalarFunction::eval(const ExtendedPoint& x) const {
  if (x.is_end_marker()) {
    if (!domain_.closure_contains(x)) {
      std::ostringstream oss;
      oss << "scalar function: " << x << " outside domain " << domain_.str();
      throw DomainError(oss.str());
    }
    std::optional<double> lim = end_limit(x);
    if (!lim) {
      std::ostringstream oss;
      oss << "scalar function: no finite limit at " << x;
      throw DomainError(oss.str());
    }
    return *lim;
  }
  double v = x.value();
  bool in_lo = !domain_.lo.is_finite() || v >= domain_.lo.value() - detail::edge_slack(v);
  bool in_hi = !domain_.hi.is_finite() || v <= domain_.hi.value() + detail::edge_slack(v);
  if (!in_lo || !in_hi) {
    std::ostringstream oss;
    oss << "scalar function: " << x << " outside domain " << domain_.str();
    throw DomainError(oss.str());
  }
  return eval_finite(detail::clamp_finite(domain_, v));
}

std::optional<double> ScalarFunction::end_limit(const ExtendedPoint& marker) const {
  switch (kind_) {
    case ScalarKind::Constant: return pa_;
    case ScalarKind::Polynomial: {
      size_t deg = coeffs_.size();
      while (deg > 1 && coeffs_[deg - 1] == 0.0) --deg;
      if (deg == 1) return coeffs_[0];
      return std::nullopt;
    }
    case ScalarKind::Hat: return 0.0;
    case ScalarKind::Piecewise:
      return marker.is_plus_inf() ? parts_.back().end_limit(marker)
                                  : parts_.front().end_limit(marker);
    case ScalarKind::RationalTail: return 0.0;
    case ScalarKind::Composed: {
      ExtendedPoint mid = map_->forward(marker);
      if (mid.is_finite()) return outer_->eval(mid);
      return outer_->end_limit(mid);
    }
    case ScalarKind::Callable:
      return marker.is_plus_inf() ? limit_hi_ : limit_lo_;
  }
  return std::nullopt;
}

std::vector<double> ScalarFunction::breakpoints() const {
  std::vector<double> out;
  switch (kind_) {
    case ScalarKind::Constant:
    case ScalarKind::Polynomial:
    case ScalarKind::RationalTail:
      break;
    case ScalarKind::Hat:
      out = {pb_ - pa_, pb_, pb_ + pa_};
      break;
    case ScalarKind::Piecewise:
      out = breaks_;
      for (const ScalarFunction& p : parts_) {
        auto sub = p.breakpoints();
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    case ScalarKind::Composed:
      for (double b : outer_->breakpoints()) {
        ExtendedPoint bp = ExtendedPoint::finite(b);
        if (!map_->codomain().closure_contains(bp)) continue;
        ExtendedPoint back = map_->inverse(bp);
        if (back.is_finite()) out.push_back(back.value());
      }
      break;
    case ScalarKind::Callable:
      out = hints_;
      break;
  }
  std::vector<double> kept;
  for (double b : out)
    if (domain_.interior_contains(ExtendedPoint::finite(b))) kept.push_back(b);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

double ScalarFunction::sup_abs(int base_probes) const {
  if (base_probes < 2) throw StructuralError("sup_abs: needs at least 2 probes");
  double best = 0.0;
  auto consider = [&](double x) {
    double v = std::fabs(eval_finite(detail::clamp_finite(domain_, x)));
    if (v > best) best = v;
  };
  for (int i = 0; i <= base_probes; ++i) {
    double t = static_cast<double>(i) / base_probes;
    if (t == 0.0 && !domain_.lo.is_finite()) t = 0.5 / base_probes;
    if (t == 1.0 && !domain_.hi.is_finite()) t = 1.0 - 0.5 / base_probes;
    consider(detail::interior_point(domain_, t));
  }
  std::vector<double> anchors = breakpoints();
  if (domain_.lo.is_finite()) anchors.push_back(domain_.lo.value());
  if (domain_.hi.is_finite()) anchors.push_back(domain_.hi.value());
  for (double a : anchors) {
    double h = (1.0 + std::fabs(a)) / base_probes;
    for (int k = -10; k <= 10; ++k) consider(a + k * h / 10.0);
  }
  for (const ExtendedPoint& m : {domain_.lo, domain_.hi}) {
    if (!m.is_end_marker()) continue;
    std::optional<double> lim = end_limit(m);
    if (lim && std::fabs(*lim) > best) best = std::fabs(*lim);
  }
  return best;
}

bool ScalarFunction::is_continuous_at_breaks(double tol) const {
  if (kind_ == ScalarKind::Composed) return outer_->is_continuous_at_breaks(tol);
  if (kind_ != ScalarKind::Piecewise) return true;
  for (const ScalarFunction& p : parts_)
    if (!p.is_continuous_at_breaks(tol)) return false;
  for (size_t i = 0; i < breaks_.size(); ++i) {
    double lower = parts_[i].eval(ExtendedPoint::finite(breaks_[i]));
    double upper = parts_[i + 1].eval(ExtendedPoint::finite(breaks_[i]));
    if (std::fabs(lower - upper) > tol) return false;
  }
  return true;
}

}  // namespace fraxterp
