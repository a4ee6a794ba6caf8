#include "fraxterp/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

namespace {

Ambient ambient_from_interval(const Interval& iv) {
  if (iv.lo.is_minus_inf() && iv.hi.is_plus_inf()) return Ambient::real_line();
  if (iv.lo.is_finite() && iv.lo.value() == 0.0 && iv.hi.is_plus_inf()) return Ambient::half_line();
  if (iv.lo.is_finite() && iv.hi.is_finite()) return Ambient::compact(iv.lo.value(), iv.hi.value());
  throw StructuralError("pullback: the domain " + iv.str() + " matches no supported ambient");
}

}  // namespace

Scenario build_example1() {
  Interval unit = Interval::closed(0.0, 1.0);
  Homeomorphism1D b1 = Homeomorphism1D::affine(0.5, 0.0, unit);
  Homeomorphism1D b2 = Homeomorphism1D::affine(0.5, 0.5, unit);
  ScalarFunction g = ScalarFunction::hat(0.5, 0.5, unit);

  std::vector<Piece> pieces;
  pieces.push_back({unit, b1});
  pieces.push_back({unit, b2});
  PartitionScheme scheme = PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit,
                                                 std::move(pieces), {});

  std::vector<VerticalMap> verticals;
  verticals.push_back(VerticalMap::affine(ScalarFunction::composed(g, b1),
                                          ScalarFunction::constant(0.8, unit)));
  verticals.push_back(VerticalMap::affine(ScalarFunction::composed(g, b2),
                                          ScalarFunction::constant(-0.6, unit)));

  Scenario s{"dyadic-tent", build_rb(std::move(scheme), std::move(verticals), {})};
  s.notes = "two affine pieces on [0,1], tent offset, scales 4/5 and -3/5";
  return s;
}

Scenario pullback_scenario(const Scenario& source, const Homeomorphism1D& j) {
  const PartitionScheme& ss = source.op.scheme();
  if (ss.ambient().kind() != AmbientKind::CompactInterval)
    throw StructuralError("pullback: source ambient must be a compact interval");
  if (!(j.codomain() == ss.ambient().extent())) {
    std::ostringstream oss;
    oss << "pullback: codomain of j " << j.codomain().str() << " differs from the source ambient "
        << ss.ambient().extent().str();
    throw StructuralError(oss.str());
  }

  Ambient amb = ambient_from_interval(j.domain());
  Homeomorphism1D j_inv = j.inverted();

  std::vector<Piece> pieces;
  std::vector<VerticalMap> verticals;
  for (size_t i = 0; i < ss.bounded().size(); ++i) {
    const Piece& p = ss.bounded()[i];
    const VerticalMap& v = source.op.bounded_vertical()[i];
    Interval pulled_domain = j_inv.restricted(p.domain).codomain();
    Homeomorphism1D j_i = j.restricted(pulled_domain);
    Homeomorphism1D pulled_map = Homeomorphism1D::compose(j_inv, Homeomorphism1D::compose(p.map, j_i));
    pieces.push_back({pulled_domain, pulled_map});
    if (!v.is_affine())
      throw StructuralError("pullback: only affine vertical maps can be transported");
    verticals.push_back(VerticalMap::affine(ScalarFunction::composed(v.offset(), j_i),
                                            ScalarFunction::composed(v.scale(), j_i)));
  }

  PartitionScheme scheme =
      PartitionScheme::make(amb, true, std::nullopt, {}, std::move(pieces));

  Scenario out{source.name + "-pullback", build_rb(std::move(scheme), {}, std::move(verticals)),
               Provenance::Pullback, std::make_shared<RBOperator>(source.op), j,
               "transported through " + j.describe()};
  return out;
}

Scenario build_halfline_global() {
  Interval half_closed = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf(),
                                        true, true);
  Interval half_open = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf(),
                                      true, false);

  Homeomorphism1D u1 = Homeomorphism1D::atan_scaled(half_open);
  Homeomorphism1D u2 = Homeomorphism1D::translation(1.0, half_closed);

  std::vector<ScalarFunction> parts;
  parts.push_back(ScalarFunction::polynomial({0.0, -1.0}, Interval::closed(0.0, 0.5)));
  parts.push_back(ScalarFunction::polynomial({-1.0, 1.0}, Interval::closed(0.5, 2.0)));
  parts.push_back(ScalarFunction::rational_tail(
      2.0, Interval::make(ExtendedPoint::finite(2.0), ExtendedPoint::plus_inf(), true, true)));
  ScalarFunction g = ScalarFunction::piecewise({0.5, 2.0}, std::move(parts), half_closed);

  std::vector<Piece> pieces;
  pieces.push_back({half_open, u1});
  pieces.push_back({half_closed, u2});
  PartitionScheme scheme =
      PartitionScheme::make(Ambient::half_line(), true, std::nullopt, {}, std::move(pieces));

  std::vector<VerticalMap> verticals;
  verticals.push_back(VerticalMap::affine(ScalarFunction::composed(g, u1),
                                          ScalarFunction::constant(0.75, half_open)));
  verticals.push_back(VerticalMap::affine(ScalarFunction::composed(g, u2),
                                          ScalarFunction::constant(0.7, half_closed)));

  Scenario s{"halfline-global", build_rb(std::move(scheme), {}, std::move(verticals))};
  s.notes = "atan piece onto [0,1), shift piece onto [1,inf]; kinked offset with 2/x tail";
  return s;
}

DecayReport decay_report(const FractalFunction& f, double x_lo, double x_hi, int probes) {
  const Ambient& amb = f.op().scheme().ambient();
  if (amb.kind() == AmbientKind::CompactInterval)
    throw StructuralError("decay_report: needs an unbounded ambient");
  if (!(x_lo >= 1.0) || !(x_hi > x_lo))
    throw StructuralError("decay_report: requires 1 <= x_lo < x_hi");
  if (probes < 2) throw StructuralError("decay_report: needs at least 2 probes");

  DecayReport r;
  r.probes = probes;
  double llo = std::log(x_lo), lhi = std::log(x_hi);
  for (int i = 0; i < probes; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (probes - 1));
    double val = std::fabs(x * evaluate(f, ExtendedPoint::finite(x), f.default_tol()));
    if (val > r.sup) {
      r.sup = val;
      r.argmax = x;
    }
  }
  return r;
}

}  // namespace fraxterp
