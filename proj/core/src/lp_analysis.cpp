#include "fraxterp/lp_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraxterp/errors.hpp"
#include "probing.hpp"

namespace fraxterp {

namespace {

constexpr double kGL5Nodes[5] = {-0.906179845938664, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.906179845938664};
constexpr double kGL5Weights[5] = {0.23692688505618908, 0.47862867049936647, 0.5688888888888889,
                                   0.47862867049936647, 0.23692688505618908};

double panel(const std::function<double(double)>& fn, double a, double b, QuadratureKind kind) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  if (kind == QuadratureKind::Midpoint) return fn(mid) * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += kGL5Weights[i] * fn(mid + half * kGL5Nodes[i]);
  return acc * half;
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 const QuadratureRule& rule) {
  if (rule.subdivisions < 1) throw StructuralError("integrate: subdivisions must be >= 1");
  if (!(b >= a)) throw StructuralError("integrate: needs a <= b");
  double acc = 0.0;
  for (int i = 0; i < rule.subdivisions; ++i) {
    double lo = a + (b - a) * i / rule.subdivisions;
    double hi = a + (b - a) * (i + 1) / rule.subdivisions;
    acc += panel(fn, lo, hi, rule.kind);
  }
  return acc;
}

JacobianBound jacobian_bound(const Homeomorphism1D& map, const Interval& piece) {
  Homeomorphism1D inv = map.inverted();
  auto slope = [&](double y) { return std::fabs(inv.derivative(y)); };

  // Reference points: an interior sweep plus the finite closed endpoints.
  double sup = 0.0;
  const int probes = 512;
  for (int i = 1; i < probes; ++i) {
    double t = static_cast<double>(i) / probes;
    sup = std::max(sup, slope(detail::interior_point(piece, t)));
  }
  if (piece.lo.is_finite() && piece.closed_lo) sup = std::max(sup, slope(piece.lo.value()));
  if (piece.hi.is_finite() && piece.closed_hi) sup = std::max(sup, slope(piece.hi.value()));

  // Geometric refinement toward each end; growth past the cap means the
  // derivative blows up there.
  const double cap = 1e12;
  bool unbounded = false;
  auto refine = [&](bool toward_hi) {
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
      double t = std::pow(10.0, -static_cast<double>(k) / 4.0);
      double u = toward_hi ? 1.0 - t / 10.0 : t / 10.0;
      double v = slope(detail::interior_point(piece, u));
      sup = std::max(sup, v);
      if (v > cap && v > prev) unbounded = true;
      prev = v;
    }
  };
  refine(false);
  refine(true);
  return {unbounded, sup};
}

double lp_norm(const ScalarFunction& f, const Interval& piece, double p,
               const QuadratureRule& rule) {
  if (!(p > 0.0)) throw StructuralError("lp_norm: p must be positive");

  // Cut points: piece ends plus the breakpoints falling inside.
  std::vector<double> cuts;
  for (double b : f.breakpoints())
    if (piece.interior_contains(ExtendedPoint::finite(b))) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  if (std::isinf(p)) {
    double sup = 0.0;
    const int probes = 2048;
    for (int i = 1; i < probes; ++i) {
      double t = static_cast<double>(i) / probes;
      sup = std::max(sup, std::fabs(f(detail::interior_point(piece, t))));
    }
    for (double c : cuts) sup = std::max(sup, std::fabs(f(c)));
    for (const ExtendedPoint& end : {piece.lo, piece.hi}) {
      if (end.is_finite()) {
        sup = std::max(sup, std::fabs(f(end)));
      } else if (auto lim = f.end_limit(end)) {
        sup = std::max(sup, std::fabs(*lim));
      }
    }
    return sup;
  }

  auto power = [&](double x) { return std::pow(std::fabs(f(x)), p); };

  // Segment list in the original coordinates; unbounded ends handled by the
  // substitution x = a + t/(1-t) (or its mirror) whose Jacobian is
  // 1/(1-t)^2.
  struct Segment {
    double lo, hi;
    bool substituted;  // t-coordinates when true
    double anchor;     // finite end the substitution is anchored at
    bool from_hi;      // anchored at the hi end, running toward -inf
  };
  std::vector<Segment> segments;
  auto add_finite_run = [&](double a, double b) {
    if (b > a) segments.push_back({a, b, false, 0.0, false});
  };

  double flo = piece.lo.is_finite() ? piece.lo.value() : 0.0;
  double fhi = piece.hi.is_finite() ? piece.hi.value() : 0.0;
  if (piece.lo.is_minus_inf() && piece.hi.is_plus_inf()) {
    // Split at the middle of the breakpoints (or 0) into two half-lines.
    double split = cuts.empty() ? 0.0 : cuts[cuts.size() / 2];
    Interval left = Interval::make(ExtendedPoint::minus_inf(), ExtendedPoint::finite(split),
                                   piece.closed_lo, true);
    Interval right = Interval::make(ExtendedPoint::finite(split), ExtendedPoint::plus_inf(), true,
                                    piece.closed_hi);
    QuadratureRule half = rule;
    half.subdivisions = std::max(1, rule.subdivisions / 2);
    double acc = std::pow(lp_norm(f, left, p, half), p) + std::pow(lp_norm(f, right, p, half), p);
    return std::pow(acc, 1.0 / p);
  }
  if (piece.hi.is_plus_inf()) {
    double start = flo;
    for (double c : cuts) {
      add_finite_run(start, c);
      start = c;
    }
    segments.push_back({0.0, 1.0, true, start, false});
  } else if (piece.lo.is_minus_inf()) {
    double end = fhi;
    std::vector<double> rev(cuts.rbegin(), cuts.rend());
    for (double c : rev) {
      add_finite_run(c, end);
      end = c;
    }
    segments.push_back({0.0, 1.0, true, end, true});
  } else {
    double start = flo;
    for (double c : cuts) {
      add_finite_run(start, c);
      start = c;
    }
    add_finite_run(start, fhi);
    if (segments.empty()) return 0.0;  // degenerate piece
  }

  double acc = 0.0;
  for (const Segment& seg : segments) {
    QuadratureRule r = rule;
    r.subdivisions = std::max(1, rule.subdivisions / static_cast<int>(segments.size()));
    if (!seg.substituted) {
      acc += integrate(power, seg.lo, seg.hi, r);
    } else {
      double anchor = seg.anchor;
      bool from_hi = seg.from_hi;
      auto tail = [&](double t) {
        double x = from_hi ? anchor - t / (1.0 - t) : anchor + t / (1.0 - t);
        return power(x) / ((1.0 - t) * (1.0 - t));
      };
      // Stop just short of t=1; the quadrature nodes are interior anyway.
      acc += integrate(tail, 0.0, 1.0 - 1e-12, r);
    }
  }
  return std::pow(acc, 1.0 / p);
}

LpReport lp_contractivity(const RBOperator& op, double p, const QuadratureRule& rule) {
  if (!(p > 0.0)) throw StructuralError("lp_contractivity: p must be positive");
  for (const VerticalMap& v : op.bounded_vertical())
    if (!v.is_affine())
      throw StructuralError("lp_contractivity: requires affine vertical maps");
  for (const VerticalMap& v : op.unbounded_vertical())
    if (!v.is_affine())
      throw StructuralError("lp_contractivity: requires affine vertical maps");

  LpReport report;
  report.p = p;
  report.regime =
      std::isinf(p) ? LpRegime::Infinity : (p < 1.0 ? LpRegime::SubOne : LpRegime::OneToInf);

  const PartitionScheme& scheme = op.scheme();
  std::vector<const Piece*> pieces;
  std::vector<const VerticalMap*> verticals;
  for (size_t j = 0; j < scheme.bounded().size(); ++j) {
    pieces.push_back(&scheme.bounded()[j]);
    verticals.push_back(&op.bounded_vertical()[j]);
  }
  for (size_t i = 0; i < scheme.unbounded().size(); ++i) {
    pieces.push_back(&scheme.unbounded()[i]);
    verticals.push_back(&op.unbounded_vertical()[i]);
  }

  for (const Piece* piece : pieces)
    report.jacobians.push_back(jacobian_bound(piece->map, piece->image()));

  {
    double factor = 0.0;
    for (size_t k = 0; k < pieces.size(); ++k)
      factor = std::max(factor,
                        lp_norm(verticals[k]->scale(), pieces[k]->domain,
                                std::numeric_limits<double>::infinity(), rule));
    report.sup_norm_factor = factor;
  }

  if (report.regime == LpRegime::Infinity) {
    auto family_max = [&](size_t lo, size_t hi) {
      double best = 0.0;  // empty family contributes 0
      for (size_t k = lo; k < hi; ++k)
        best = std::max(best, lp_norm(verticals[k]->scale(), pieces[k]->domain, p, rule));
      return best;
    };
    size_t m = scheme.bounded().size();
    report.criterion_value = family_max(0, m) + family_max(m, pieces.size());
    report.passes = report.criterion_value < 1.0;
    report.reason = report.passes ? "criterion < 1" : "criterion >= 1";
    return report;
  }

  for (const JacobianBound& jb : report.jacobians) {
    if (jb.unbounded) {
      report.criterion_value = std::numeric_limits<double>::infinity();
      report.passes = false;
      report.reason = "Jacobian hypothesis violated";
      return report;
    }
  }

  double sum = 0.0;
  for (size_t k = 0; k < pieces.size(); ++k) {
    double norm = lp_norm(verticals[k]->scale(), pieces[k]->domain, p, rule);
    report.scale_norms.push_back(norm);
    sum += report.jacobians[k].value * std::pow(norm, p);
  }
  report.criterion_value = report.regime == LpRegime::SubOne ? sum : std::pow(sum, 1.0 / p);
  report.passes = report.criterion_value < 1.0;
  report.reason = report.passes ? "criterion < 1" : "criterion >= 1";
  return report;
}

}  // namespace fraxterp
