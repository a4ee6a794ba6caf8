#include "fraxterp/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Relative slack used when deciding whether a point that drifted slightly
// outside an interval should be clamped back onto it.
double edge_slack(double x) { return 1e-9 * (1.0 + std::fabs(x)); }

bool nearly_contains(const Interval& iv, double x) {
  if (iv.lo.is_finite() && x < iv.lo.value() - edge_slack(x)) return false;
  if (iv.hi.is_finite() && x > iv.hi.value() + edge_slack(x)) return false;
  return true;
}

ExtendedPoint clamp_into(const Interval& iv, const ExtendedPoint& x) {
  if (!x.is_finite()) return x;
  double v = x.value();
  if (iv.lo.is_finite() && v <= iv.lo.value()) return iv.lo;
  if (iv.hi.is_finite() && v >= iv.hi.value()) return iv.hi;
  return x;
}

// Finite parameter range used to probe the interior of a possibly unbounded
// interval: t in (0,1) is stretched onto the interval.
double interior_point(const Interval& iv, double t) {
  bool lo_fin = iv.lo.is_finite();
  bool hi_fin = iv.hi.is_finite();
  if (lo_fin && hi_fin) return iv.lo.value() + (iv.hi.value() - iv.lo.value()) * t;
  if (lo_fin) return iv.lo.value() + t / (1.0 - t);
  if (hi_fin) return iv.hi.value() - (1.0 - t) / t;
  double s = 2.0 * t - 1.0;  // (-1, 1)
  return s / (1.0 - std::fabs(s));
}

}  // namespace

Homeomorphism1D Homeomorphism1D::affine(double a, double b, const Interval& domain) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b))
    throw StructuralError("affine map: slope must be finite and nonzero");
  Homeomorphism1D m;
  m.kind_ = MapKind::Affine;
  m.params_ = {a, b};
  m.domain_ = domain;
  m.increasing_ = a > 0.0;
  m.finish_construction();
  return m;
}

Homeomorphism1D Homeomorphism1D::mobius(double a, double b, double c, double d,
                                        const Interval& domain) {
  double det = a * d - b * c;
  if (det == 0.0 || !std::isfinite(det))
    throw StructuralError("mobius map: determinant must be finite and nonzero");
  Homeomorphism1D m;
  m.kind_ = MapKind::Mobius;
  m.params_ = {a, b, c, d};
  m.domain_ = domain;
  m.increasing_ = det > 0.0;
  m.finish_construction();
  return m;
}

Homeomorphism1D Homeomorphism1D::atan_scaled(const Interval& domain) {
  Homeomorphism1D m;
  m.kind_ = MapKind::AtanScaled;
  m.domain_ = domain;
  m.increasing_ = true;
  m.finish_construction();
  return m;
}

Homeomorphism1D Homeomorphism1D::tan_scaled(const Interval& domain) {
  auto within = [](const ExtendedPoint& p) {
    return p.is_finite() && p.value() >= -1.0 && p.value() <= 1.0;
  };
  if (!within(domain.lo) || !within(domain.hi))
    throw StructuralError("tan map: domain closure must lie within [-1, 1]");
  Homeomorphism1D m;
  m.kind_ = MapKind::TanScaled;
  m.domain_ = domain;
  m.increasing_ = true;
  m.finish_construction();
  return m;
}

Homeomorphism1D Homeomorphism1D::translation(double t, const Interval& domain) {
  if (!std::isfinite(t)) throw StructuralError("translation map: offset must be finite");
  Homeomorphism1D m;
  m.kind_ = MapKind::Translation;
  m.params_ = {t};
  m.domain_ = domain;
  m.increasing_ = true;
  m.finish_construction();
  return m;
}

Homeomorphism1D Homeomorphism1D::compose(const Homeomorphism1D& outer,
                                         const Homeomorphism1D& inner) {
  const Interval& mid = inner.codomain();
  const Interval& od = outer.domain();
  auto inside = [&](const ExtendedPoint& p) {
    if (p.is_finite())
      return (od.lo.is_finite() ? p.value() >= od.lo.value() - edge_slack(p.value()) : true) &&
             (od.hi.is_finite() ? p.value() <= od.hi.value() + edge_slack(p.value()) : true);
    return od.closure_contains(p);
  };
  if (!inside(mid.lo) || !inside(mid.hi)) {
    std::ostringstream oss;
    oss << "compose: inner codomain " << mid.str() << " not contained in outer domain "
        << od.str();
    throw StructuralError(oss.str());
  }
  Homeomorphism1D m;
  m.kind_ = MapKind::Composition;
  m.outer_ = std::make_shared<Homeomorphism1D>(outer);
  m.inner_ = std::make_shared<Homeomorphism1D>(inner);
  m.domain_ = inner.domain();
  m.increasing_ = (outer.increasing() == inner.increasing());
  m.finish_construction();
  return m;
}

bool Homeomorphism1D::forward_singular_at(double x) const {
  switch (kind_) {
    case MapKind::Mobius: {
      double c = params_[2], d = params_[3];
      return c != 0.0 && c * x + d == 0.0;
    }
    case MapKind::TanScaled:
      return x == 1.0 || x == -1.0;
    default:
      return false;
  }
}

bool Homeomorphism1D::inverse_singular_at(double y) const {
  switch (kind_) {
    case MapKind::Mobius: {
      double a = params_[0], c = params_[2];
      return c != 0.0 && a - c * y == 0.0;
    }
    case MapKind::AtanScaled:
      return y == 1.0 || y == -1.0;
    default:
      return false;
  }
}

double Homeomorphism1D::rule_forward(double x) const {
  switch (kind_) {
    case MapKind::Affine: return params_[0] * x + params_[1];
    case MapKind::Mobius:
      return (params_[0] * x + params_[1]) / (params_[2] * x + params_[3]);
    case MapKind::AtanScaled: return (2.0 / kPi) * std::atan(x);
    case MapKind::TanScaled: return std::tan(kPi * x / 2.0);
    case MapKind::Translation: return x + params_[0];
    case MapKind::Composition: break;  // handled by forward()
  }
  throw StructuralError("rule_forward: composition has no direct rule");
}

double Homeomorphism1D::rule_inverse(double y) const {
  switch (kind_) {
    case MapKind::Affine: return (y - params_[1]) / params_[0];
    case MapKind::Mobius:
      return (params_[3] * y - params_[1]) / (params_[0] - params_[2] * y);
    case MapKind::AtanScaled: return std::tan(kPi * y / 2.0);
    case MapKind::TanScaled: return (2.0 / kPi) * std::atan(y);
    case MapKind::Translation: return y - params_[0];
    case MapKind::Composition: break;
  }
  throw StructuralError("rule_inverse: composition has no direct rule");
}

void Homeomorphism1D::finish_construction() {
  // Image of a domain endpoint, resolved symbolically where the rule is
  // singular or the endpoint is an end marker.
  auto endpoint_image = [&](const ExtendedPoint& e, bool is_hi) -> ExtendedPoint {
    bool toward_plus = (is_hi == increasing_);
    if (kind_ == MapKind::Composition) {
      return is_hi == inner_->increasing() ? outer_->forward(inner_->codomain().hi)
                                           : outer_->forward(inner_->codomain().lo);
    }
    if (e.is_end_marker()) {
      switch (kind_) {
        case MapKind::Affine:
        case MapKind::Translation:
          return toward_plus ? ExtendedPoint::plus_inf() : ExtendedPoint::minus_inf();
        case MapKind::Mobius: {
          double a = params_[0], c = params_[2], d = params_[3];
          if (c != 0.0) return ExtendedPoint::finite(a / c);
          return toward_plus ? ExtendedPoint::plus_inf() : ExtendedPoint::minus_inf();
        }
        case MapKind::AtanScaled:
          return ExtendedPoint::finite(e.is_plus_inf() ? 1.0 : -1.0);
        case MapKind::TanScaled:
          throw StructuralError("tan map: end marker outside [-1, 1]");
        case MapKind::Composition: break;
      }
    }
    double v = e.value();
    if (forward_singular_at(v))
      return toward_plus ? ExtendedPoint::plus_inf() : ExtendedPoint::minus_inf();
    return ExtendedPoint::from_double(rule_forward(v));
  };

  ExtendedPoint lo_img = endpoint_image(domain_.lo, false);
  ExtendedPoint hi_img = endpoint_image(domain_.hi, true);
  if (increasing_) {
    if (hi_img < lo_img) std::swap(lo_img, hi_img);  // only for malformed maps
    codomain_ = Interval::make(lo_img, hi_img, domain_.closed_lo, domain_.closed_hi);
  } else {
    if (hi_img > lo_img) std::swap(lo_img, hi_img);
    codomain_ = Interval::make(hi_img, lo_img, domain_.closed_hi, domain_.closed_lo);
  }
}

ExtendedPoint Homeomorphism1D::forward(const ExtendedPoint& x) const {
  ExtendedPoint p = x;
  if (p.is_finite()) {
    if (!nearly_contains(domain_, p.value())) {
      std::ostringstream oss;
      oss << "forward: point " << p << " outside domain " << domain_.str();
      throw DomainError(oss.str());
    }
    p = clamp_into(domain_, p);
  } else if (!domain_.closure_contains(p)) {
    std::ostringstream oss;
    oss << "forward: end marker " << p << " outside domain " << domain_.str();
    throw DomainError(oss.str());
  }
  if (kind_ == MapKind::Composition) return outer_->forward(inner_->forward(p));
  if (p == domain_.lo) return increasing_ ? codomain_.lo : codomain_.hi;
  if (p == domain_.hi) return increasing_ ? codomain_.hi : codomain_.lo;
  return ExtendedPoint::from_double(rule_forward(p.value()));
}

ExtendedPoint Homeomorphism1D::inverse(const ExtendedPoint& y) const {
  ExtendedPoint p = y;
  if (p.is_finite()) {
    if (!nearly_contains(codomain_, p.value())) {
      std::ostringstream oss;
      oss << "inverse: point " << p << " outside codomain " << codomain_.str();
      throw DomainError(oss.str());
    }
    p = clamp_into(codomain_, p);
  } else if (!codomain_.closure_contains(p)) {
    std::ostringstream oss;
    oss << "inverse: end marker " << p << " outside codomain " << codomain_.str();
    throw DomainError(oss.str());
  }
  if (kind_ == MapKind::Composition) return inner_->inverse(outer_->inverse(p));
  if (p == codomain_.lo) return increasing_ ? domain_.lo : domain_.hi;
  if (p == codomain_.hi) return increasing_ ? domain_.hi : domain_.lo;
  return ExtendedPoint::from_double(rule_inverse(p.value()));
}

double Homeomorphism1D::derivative(double x) const {
  switch (kind_) {
    case MapKind::Affine: return params_[0];
    case MapKind::Mobius: {
      double den = params_[2] * x + params_[3];
      return (params_[0] * params_[3] - params_[1] * params_[2]) / (den * den);
    }
    case MapKind::AtanScaled: return (2.0 / kPi) / (1.0 + x * x);
    case MapKind::TanScaled: {
      double t = std::tan(kPi * x / 2.0);
      return (kPi / 2.0) * (1.0 + t * t);
    }
    case MapKind::Translation: return 1.0;
    case MapKind::Composition: {
      ExtendedPoint mid = inner_->forward(ExtendedPoint::finite(x));
      return outer_->derivative(mid.value()) * inner_->derivative(x);
    }
  }
  return 0.0;
}

Homeomorphism1D Homeomorphism1D::inverted() const {
  switch (kind_) {
    case MapKind::Affine:
      return affine(1.0 / params_[0], -params_[1] / params_[0], codomain_);
    case MapKind::Mobius:
      return mobius(params_[3], -params_[1], -params_[2], params_[0], codomain_);
    case MapKind::AtanScaled: return tan_scaled(codomain_);
    case MapKind::TanScaled: return atan_scaled(codomain_);
    case MapKind::Translation: return translation(-params_[0], codomain_);
    case MapKind::Composition: return compose(inner_->inverted(), outer_->inverted());
  }
  throw StructuralError("inverted: unknown kind");
}

Homeomorphism1D Homeomorphism1D::restricted(const Interval& subdomain) const {
  auto inside = [&](const ExtendedPoint& p) {
    if (p.is_end_marker()) return domain_.closure_contains(p);
    double v = p.value();
    return (domain_.lo.is_finite() ? v >= domain_.lo.value() - edge_slack(v) : true) &&
           (domain_.hi.is_finite() ? v <= domain_.hi.value() + edge_slack(v) : true);
  };
  if (!inside(subdomain.lo) || !inside(subdomain.hi)) {
    std::ostringstream oss;
    oss << "restricted: " << subdomain.str() << " is not inside the domain " << domain_.str();
    throw StructuralError(oss.str());
  }
  Homeomorphism1D m = *this;
  m.domain_ = subdomain;
  m.finish_construction();
  return m;
}

std::string Homeomorphism1D::describe() const {
  std::ostringstream oss;
  switch (kind_) {
    case MapKind::Affine: oss << "affine(" << params_[0] << ", " << params_[1] << ")"; break;
    case MapKind::Mobius:
      oss << "mobius(" << params_[0] << ", " << params_[1] << ", " << params_[2] << ", "
          << params_[3] << ")";
      break;
    case MapKind::AtanScaled: oss << "atan_scaled"; break;
    case MapKind::TanScaled: oss << "tan_scaled"; break;
    case MapKind::Translation: oss << "translation(" << params_[0] << ")"; break;
    case MapKind::Composition:
      oss << outer_->describe() << " o " << inner_->describe();
      break;
  }
  oss << " : " << domain_.str() << " -> " << codomain_.str();
  return oss.str();
}

ExtendedPoint apply(const Homeomorphism1D& map, Direction dir, const ExtendedPoint& x) {
  return dir == Direction::Forward ? map.forward(x) : map.inverse(x);
}

MapReport verify_homeomorphism(const Homeomorphism1D& map, int probes) {
  if (probes < 3) throw StructuralError("verify_homeomorphism: needs at least 3 probes");
  MapReport report;
  auto add = [&](const std::string& cond, bool ok, const std::string& detail) {
    report.checks.push_back({cond, ok, detail});
    if (!ok) report.ok = false;
  };

  std::vector<ExtendedPoint> xs;
  for (int i = 0; i < probes; ++i) {
    double t = (i + 0.5) / probes;
    xs.push_back(ExtendedPoint::finite(interior_point(map.domain(), t)));
  }

  // Strict monotonicity, consistent with the declared orientation.
  bool mono_ok = true;
  std::string mono_detail;
  try {
    ExtendedPoint prev = map.forward(xs[0]);
    for (size_t i = 1; i < xs.size(); ++i) {
      ExtendedPoint cur = map.forward(xs[i]);
      bool step_ok = map.increasing() ? prev < cur : cur < prev;
      if (!step_ok) {
        mono_ok = false;
        std::ostringstream oss;
        oss << "not monotone / singular near x = " << xs[i];
        mono_detail = oss.str();
        break;
      }
      prev = cur;
    }
  } catch (const std::exception& e) {
    mono_ok = false;
    mono_detail = e.what();
  }
  add("monotone", mono_ok, mono_detail);

  // Round trip through both directions.
  bool rt_ok = true;
  std::string rt_detail;
  for (const ExtendedPoint& x : xs) {
    try {
      ExtendedPoint back = map.inverse(map.forward(x));
      if (!back.is_finite() ||
          std::fabs(back.value() - x.value()) > 1e-9 * (1.0 + std::fabs(x.value()))) {
        rt_ok = false;
        std::ostringstream oss;
        oss << "round trip drift at x = " << x;
        rt_detail = oss.str();
        break;
      }
    } catch (const std::exception& e) {
      rt_ok = false;
      rt_detail = e.what();
      break;
    }
  }
  add("round_trip", rt_ok, rt_detail);

  // End markers and endpoints must land on codomain endpoints consistently.
  bool ep_ok = true;
  std::string ep_detail;
  try {
    ExtendedPoint lo_img = map.forward(map.domain().lo);
    ExtendedPoint hi_img = map.forward(map.domain().hi);
    ExtendedPoint want_lo = map.increasing() ? map.codomain().lo : map.codomain().hi;
    ExtendedPoint want_hi = map.increasing() ? map.codomain().hi : map.codomain().lo;
    if (!(lo_img == want_lo && hi_img == want_hi)) {
      ep_ok = false;
      ep_detail = "endpoint images disagree with recorded codomain";
    }
  } catch (const std::exception& e) {
    ep_ok = false;
    ep_detail = e.what();
  }
  add("endpoint_correspondence", ep_ok, ep_detail);

  // Analytic derivative against a central difference at a few mid points.
  bool fd_ok = true;
  std::string fd_detail;
  for (int i = 1; i <= 3 && fd_ok; ++i) {
    double x = interior_point(map.domain(), i / 4.0);
    double h = 1e-6 * (1.0 + std::fabs(x));
    try {
      double fd = (map.forward(ExtendedPoint::finite(x + h)).value() -
                   map.forward(ExtendedPoint::finite(x - h)).value()) /
                  (2.0 * h);
      double an = map.derivative(x);
      if (std::fabs(fd - an) > 1e-4 * (1.0 + std::fabs(an))) {
        fd_ok = false;
        std::ostringstream oss;
        oss << "derivative mismatch at x = " << x << " (fd " << fd << ", rule " << an << ")";
        fd_detail = oss.str();
      }
    } catch (const std::exception&) {
      // Probing beside a singular endpoint is allowed to fail quietly.
    }
  }
  add("derivative_consistency", fd_ok, fd_detail);

  return report;
}

}  // namespace fraxterp
