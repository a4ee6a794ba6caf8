#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fraxterp/errors.hpp"
#include "fraxterp/rb_operator.hpp"
#include "fraxterp/scenarios.hpp"

using namespace fraxterp;

namespace {

// Real-line operator: two affine halves of the core [-1,1] and two
// reflections swapping the tails, rational-tail offsets, all scales 1/2.
RBOperator realline_op() {
  Interval core = Interval::closed(-1.0, 1.0);
  std::vector<Piece> bounded;
  bounded.push_back({core, Homeomorphism1D::affine(0.5, -0.5, core)});
  bounded.push_back({core, Homeomorphism1D::affine(0.5, 0.5, core)});

  Interval right = Interval::make(ExtendedPoint::finite(1.0), ExtendedPoint::plus_inf());
  Interval left = Interval::make(ExtendedPoint::minus_inf(), ExtendedPoint::finite(-1.0));
  std::vector<Piece> unbounded;
  unbounded.push_back({right, Homeomorphism1D::affine(-1.0, 0.0, right)});
  unbounded.push_back({left, Homeomorphism1D::affine(-1.0, 0.0, left)});

  PartitionScheme scheme = PartitionScheme::make(Ambient::real_line(), true, core,
                                                 std::move(bounded), std::move(unbounded));

  std::vector<VerticalMap> bv, uv;
  bv.push_back(VerticalMap::affine(ScalarFunction::hat(1.0, 0.0, core),
                                   ScalarFunction::constant(0.5, core)));
  bv.push_back(VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, core),
                                   ScalarFunction::constant(-0.5, core)));
  uv.push_back(VerticalMap::affine(ScalarFunction::rational_tail(1.0, right),
                                   ScalarFunction::constant(0.5, right)));
  uv.push_back(VerticalMap::affine(ScalarFunction::rational_tail(-1.0, left),
                                   ScalarFunction::constant(0.5, left)));
  return build_rb(std::move(scheme), std::move(bv), std::move(uv));
}

RBOperator unit_op(double scale1, double scale2) {
  Interval unit = Interval::closed(0.0, 1.0);
  std::vector<Piece> pieces;
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.0, unit)});
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.5, unit)});
  PartitionScheme scheme =
      PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit, std::move(pieces), {});
  std::vector<VerticalMap> v;
  v.push_back(VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, unit),
                                  ScalarFunction::constant(scale1, unit)));
  v.push_back(VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, unit),
                                  ScalarFunction::constant(scale2, unit)));
  return build_rb(std::move(scheme), std::move(v), {});
}

}  // namespace

TEST_CASE("build_rb computes contraction and value bound") {
  RBOperator op = realline_op();
  CHECK(op.contraction() == doctest::Approx(0.5));
  CHECK(op.base_sup() == doctest::Approx(1.0));
  CHECK(op.value_bound() == doctest::Approx(2.0));
  CHECK(op.vertical({PieceKind::Bounded, 2}).lip_y() == doctest::Approx(0.5));
  CHECK(op.vertical({PieceKind::Unbounded, 1}).offset_sup() == doctest::Approx(1.0));
}

TEST_CASE("build_rb rejects broken assemblies") {
  Interval unit = Interval::closed(0.0, 1.0);
  std::vector<Piece> pieces;
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.0, unit)});
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.5, unit)});
  auto scheme = [&] {
    std::vector<Piece> copy = pieces;
    return PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit, std::move(copy), {});
  };

  SUBCASE("vertical count mismatch") {
    std::vector<VerticalMap> v;
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(0.5, unit)));
    CHECK_THROWS_AS(build_rb(scheme(), std::move(v), {}), StructuralError);
  }
  SUBCASE("vertical domain mismatch") {
    Interval other = Interval::closed(0.0, 2.0);
    std::vector<VerticalMap> v;
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(0.5, unit)));
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, other),
                                    ScalarFunction::constant(0.5, other)));
    CHECK_THROWS_AS(build_rb(scheme(), std::move(v), {}), StructuralError);
  }
  SUBCASE("non-contractive scale is rejected with the offending piece") {
    std::vector<VerticalMap> v;
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(0.5, unit)));
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(1.0, unit)));
    try {
      build_rb(scheme(), std::move(v), {});
      FAIL("expected NotContractiveError");
    } catch (const NotContractiveError& e) {
      CHECK(e.piece_label == "BOUNDED#2");
      CHECK(e.scale_sup == doctest::Approx(1.0));
    }
  }
  SUBCASE("gap in the partition is rejected") {
    std::vector<Piece> gap;
    gap.push_back({unit, Homeomorphism1D::affine(0.5, 0.0, unit)});
    PartitionScheme s =
        PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit, std::move(gap), {});
    std::vector<VerticalMap> v;
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(0.5, unit)));
    CHECK_THROWS_AS(build_rb(std::move(s), std::move(v), {}), StructuralError);
  }
}

TEST_CASE("predicted iteration counts match the closed form") {
  Scenario tent = build_example1();
  CHECK(predicted_iterations(tent.op, 1e-8) == 87);
  Scenario half = build_halfline_global();
  CHECK(predicted_iterations(half.op, 1e-6) == 53);
  RBOperator zero_scale = unit_op(0.0, 0.0);
  CHECK(predicted_iterations(zero_scale, 1e-12) == 1);
}

TEST_CASE("zero scales converge to the offset part in one application") {
  RBOperator op = unit_op(0.0, 0.0);
  FractalFunction f = fixed_point(op, 1e-12, 256);
  CHECK(f.iterations() == 1);
  // Fixed point pulls the offset back through the maps: f(b_j(xi)) = g(xi),
  // so f(0.5) = hat(1) = 0 and f(0.125) = hat(0.25) = 0.25.
  CHECK(std::fabs(evaluate(f, ExtendedPoint::finite(0.5), 1e-12)) <= 1e-15);
  CHECK(evaluate(f, ExtendedPoint::finite(0.125), 1e-12) == doctest::Approx(0.25));
  CHECK(f.grid_residual() <= 1e-15);
}

TEST_CASE("grid fixed point agrees with recursive evaluation at the nodes") {
  SUBCASE("dyadic grid is exact") {
    Scenario tent = build_example1();
    FractalFunction f = fixed_point(tent.op, 1e-9, 1 << 12);
    REQUIRE(f.has_grid());
    CHECK(f.grid_residual() <= 1e-9);
    const GridFunction& g = f.grid();
    for (int i = 0; i <= g.cells(); i += 37) {
      double direct = evaluate(f, g.point(i), 1e-10);
      CHECK(std::fabs(direct - g[i]) <= 2.1e-9);
    }
  }
  SUBCASE("compactified real-line grid tracks within the fractal interpolation error") {
    RBOperator op = realline_op();
    FractalFunction f = fixed_point(op, 1e-9, 1 << 12);
    REQUIRE(f.has_grid());
    const GridFunction& g = f.grid();
    for (int i = 0; i <= g.cells(); i += 37) {
      double direct = evaluate(f, g.point(i), 1e-10);
      CHECK(std::fabs(direct - g[i]) <= 3e-3);
    }
  }
}

TEST_CASE("fixed point satisfies the self-referential equation") {
  RBOperator op = realline_op();
  FractalFunction f(op);
  CHECK(residual(op, f, 500) <= 3e-9);

  // Per-piece check at random interior points of each piece domain.
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> t(0.02, 0.98);
  for (int kind = 0; kind < 2; ++kind) {
    int count = kind == 0 ? static_cast<int>(op.scheme().bounded().size())
                          : static_cast<int>(op.scheme().unbounded().size());
    for (int idx = 1; idx <= count; ++idx) {
      PieceId id{kind == 0 ? PieceKind::Bounded : PieceKind::Unbounded, idx};
      const Piece& piece = op.scheme().piece(id);
      for (int trial = 0; trial < 25; ++trial) {
        double span = t(rng);
        // Map a unit parameter into the piece domain through the ambient chart.
        const Ambient& amb = op.scheme().ambient();
        double ulo = amb.to_unit(piece.domain.lo), uhi = amb.to_unit(piece.domain.hi);
        ExtendedPoint xi = amb.from_unit(ulo + (uhi - ulo) * span);
        if (!xi.is_finite()) continue;
        double fx = evaluate(f, xi, 1e-11);
        double lhs = evaluate(f, piece.map.forward(xi), 1e-11);
        double rhs = op.vertical(id).apply(xi, fx);
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
      }
    }
  }
}

TEST_CASE("evaluate_via_piece agrees across shared boundaries") {
  Scenario tent = build_example1();
  FractalFunction f(tent.op);
  double via1 = evaluate_via_piece(f, {PieceKind::Bounded, 1}, ExtendedPoint::finite(0.5), 1e-10);
  double via2 = evaluate_via_piece(f, {PieceKind::Bounded, 2}, ExtendedPoint::finite(0.5), 1e-10);
  CHECK(std::fabs(via1 - via2) <= 2e-10);
  CHECK(via1 == doctest::Approx(0.5));
  CHECK_THROWS_AS(
      evaluate_via_piece(f, {PieceKind::Bounded, 1}, ExtendedPoint::finite(0.9), 1e-10),
      DomainError);
}

TEST_CASE("recursive evaluation reports an honest depth failure") {
  RBOperator op = unit_op(0.99, 0.99);
  FractalFunction f(op, 1e-9, 16);
  try {
    evaluate(f, ExtendedPoint::finite(1.0 / 3.0), 1e-9);
    FAIL("expected DepthExceededError");
  } catch (const DepthExceededError& e) {
    CHECK(e.achieved_bound > 1e-9);
    CHECK(std::fabs(e.partial_value) <= op.value_bound());
    CHECK(e.achieved_bound <= std::pow(0.99, 16) * op.value_bound() * 1.0001);
  }
}

TEST_CASE("grid functions interpolate linearly in unit coordinates") {
  GridFunction g(Ambient::compact(0.0, 1.0), 4);
  for (int i = 0; i <= 4; ++i) g[i] = static_cast<double>(i);
  CHECK(g.interpolate_unit(0.5) == doctest::Approx(2.0));
  CHECK(g.interpolate_unit(0.375) == doctest::Approx(1.5));
  CHECK(g.interpolate(ExtendedPoint::finite(1.0)) == doctest::Approx(4.0));
  CHECK(g.sup_abs() == 4.0);
  CHECK(g.point(0) == ExtendedPoint::finite(0.0));

  GridFunction h(Ambient::half_line(), 2);
  CHECK(h.point(2).is_plus_inf());
  CHECK(h.point(1) == ExtendedPoint::finite(1.0));  // u = 1/2 -> x = 1
  CHECK_THROWS_AS(GridFunction(Ambient::half_line(), 0), StructuralError);
}

TEST_CASE("apply_rb contracts the sup distance between grids") {
  RBOperator op = realline_op();
  GridFunction a(Ambient::real_line(), 512, 0.0);
  GridFunction b(Ambient::real_line(), 512, 1.0);
  GridFunction fa = apply_rb(op, a), fb = apply_rb(op, b);
  CHECK(sup_diff(fa, fb) <= 0.5 * sup_diff(a, b) + 1e-12);

  GridFunction wrong(Ambient::half_line(), 512);
  CHECK_THROWS_AS(apply_rb(op, wrong), StructuralError);
}
