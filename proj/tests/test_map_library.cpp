#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fraxterp/errors.hpp"
#include "fraxterp/maps.hpp"
#include "fraxterp/scalar_function.hpp"
#include "fraxterp/vertical_map.hpp"

using namespace fraxterp;

namespace {

double lerp(double a, double b, double t) { return a + (b - a) * t; }

void check_roundtrip(const Homeomorphism1D& m, double x, double tol) {
  ExtendedPoint p = ExtendedPoint::finite(x);
  ExtendedPoint y = m.forward(p);
  ExtendedPoint back = m.inverse(y);
  REQUIRE(back.is_finite());
  CHECK(std::fabs(back.value() - x) <= tol * (1.0 + std::fabs(x)));
}

void check_derivative(const Homeomorphism1D& m, double x) {
  const double h = 1e-6 * (1.0 + std::fabs(x));
  double num = (m.forward(ExtendedPoint::finite(x + h)).value() -
                m.forward(ExtendedPoint::finite(x - h)).value()) /
               (2.0 * h);
  CHECK(m.derivative(x) == doctest::Approx(num).epsilon(1e-5));
}

}  // namespace

TEST_CASE("catalog maps invert and differentiate") {
  std::mt19937 rng(977);
  std::uniform_real_distribution<double> t01(0.05, 0.95);

  SUBCASE("affine, random parameters") {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      double a = coef(rng);
      if (std::fabs(a) < 0.1) a = 0.5;
      double b = coef(rng);
      Interval dom = Interval::closed(-2.0, 3.0);
      Homeomorphism1D m = Homeomorphism1D::affine(a, b, dom);
      CHECK(m.increasing() == (a > 0.0));
      double x = lerp(-2.0, 3.0, t01(rng));
      check_roundtrip(m, x, 1e-12);
      check_derivative(m, x);
      MapReport rep = verify_homeomorphism(m, 64);
      CHECK(rep.ok);
    }
    CHECK_THROWS_AS(Homeomorphism1D::affine(0.0, 1.0, Interval::closed(0.0, 1.0)),
                    StructuralError);
  }
  SUBCASE("mobius with pole outside the domain") {
    Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
    Homeomorphism1D j = Homeomorphism1D::mobius(0.0, 1.0, 1.0, 1.0, half);  // 1/(x+1)
    CHECK(j.codomain() == Interval::closed(0.0, 1.0));
    CHECK(!j.increasing());
    for (int trial = 0; trial < 50; ++trial) {
      double x = std::exp(lerp(-3.0, 3.0, t01(rng)));
      check_roundtrip(j, x, 1e-12);
      check_derivative(j, x);
    }
    CHECK(verify_homeomorphism(j, 128).ok);
    CHECK_THROWS_AS(Homeomorphism1D::mobius(1.0, 2.0, 2.0, 4.0, half), StructuralError);
  }
  SUBCASE("atan and tan are mutually inverse") {
    Interval half_open =
        Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf(), true, false);
    Homeomorphism1D a = Homeomorphism1D::atan_scaled(half_open);
    CHECK(a.codomain().lo == ExtendedPoint::finite(0.0));
    CHECK(a.codomain().hi == ExtendedPoint::finite(1.0));
    CHECK(!a.codomain().closed_hi);
    for (int trial = 0; trial < 50; ++trial) {
      double x = std::exp(lerp(-3.0, 4.0, t01(rng)));
      check_roundtrip(a, x, 1e-9);
      check_derivative(a, x);
    }
    Homeomorphism1D t = Homeomorphism1D::tan_scaled(a.codomain());
    CHECK(t.codomain().hi.is_plus_inf());
    CHECK(t.forward(ExtendedPoint::finite(0.5)).value() == doctest::Approx(1.0));
    CHECK(verify_homeomorphism(a, 128).ok);
    CHECK(verify_homeomorphism(t, 128).ok);
  }
  SUBCASE("translation on an unbounded domain keeps the marker") {
    Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
    Homeomorphism1D m = Homeomorphism1D::translation(1.0, half);
    CHECK(m.forward(ExtendedPoint::plus_inf()).is_plus_inf());
    CHECK(m.codomain().lo == ExtendedPoint::finite(1.0));
    check_roundtrip(m, 17.25, 0.0);
    CHECK(verify_homeomorphism(m, 64).ok);
  }
  SUBCASE("composition chains round-trip") {
    Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
    Homeomorphism1D j = Homeomorphism1D::mobius(0.0, 1.0, 1.0, 1.0, half);
    Homeomorphism1D s = Homeomorphism1D::affine(0.5, 0.5, j.codomain());  // [0,1] -> [0.5,1]
    Homeomorphism1D c = Homeomorphism1D::compose(s, j);
    CHECK(c.kind() == MapKind::Composition);
    CHECK(c.domain() == half);
    CHECK(c.codomain() == Interval::closed(0.5, 1.0));
    for (int trial = 0; trial < 30; ++trial) {
      double x = std::exp(lerp(-2.0, 2.0, t01(rng)));
      check_roundtrip(c, x, 1e-12);
      check_derivative(c, x);
      double want = s.forward(j.forward(ExtendedPoint::finite(x))).value();
      CHECK(c.forward(ExtendedPoint::finite(x)).value() == doctest::Approx(want));
    }
    CHECK(verify_homeomorphism(c, 64).ok);
  }
}

TEST_CASE("end markers map to endpoint images by orientation") {
  Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
  Homeomorphism1D j = Homeomorphism1D::mobius(0.0, 1.0, 1.0, 1.0, half);  // decreasing
  CHECK(j.forward(ExtendedPoint::plus_inf()) == ExtendedPoint::finite(0.0));
  CHECK(j.forward(ExtendedPoint::finite(0.0)) == ExtendedPoint::finite(1.0));
  CHECK(j.inverse(ExtendedPoint::finite(0.0)).is_plus_inf());

  Homeomorphism1D ji = j.inverted();
  CHECK(ji.domain() == j.codomain());
  CHECK(ji.forward(ExtendedPoint::finite(0.0)).is_plus_inf());
  CHECK(ji.forward(ExtendedPoint::finite(1.0)) == ExtendedPoint::finite(0.0));
}

TEST_CASE("restriction narrows the domain and recomputes the codomain") {
  Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
  Homeomorphism1D j = Homeomorphism1D::mobius(0.0, 1.0, 1.0, 1.0, half);
  Homeomorphism1D r = j.restricted(Interval::closed(1.0, 3.0));
  CHECK(r.domain() == Interval::closed(1.0, 3.0));
  CHECK(r.codomain().lo.value() == doctest::Approx(0.25));
  CHECK(r.codomain().hi.value() == doctest::Approx(0.5));
  CHECK_THROWS_AS(j.restricted(Interval::closed(-1.0, 2.0)), StructuralError);
}

TEST_CASE("verify_homeomorphism reports monotonicity breaks instead of throwing") {
  // Pole at x = 1 sits inside [0, 2]; construction cannot see it from the
  // endpoint images alone, verification must.
  Interval dom = Interval::closed(0.0, 2.0);
  Homeomorphism1D bad = Homeomorphism1D::mobius(1.0, 0.0, 1.0, -1.0, dom);  // x/(x-1)
  MapReport rep = verify_homeomorphism(bad, 128);
  CHECK(!rep.ok);
  bool flagged = false;
  for (const MapCheck& c : rep.checks)
    if (!c.ok) flagged = true;
  CHECK(flagged);
}

TEST_CASE("scalar functions evaluate, bound, and expose limits") {
  Interval unit = Interval::closed(0.0, 1.0);

  SUBCASE("polynomial and constant") {
    ScalarFunction p = ScalarFunction::polynomial({1.0, -2.0, 1.0}, unit);  // (x-1)^2
    CHECK(p(0.0) == doctest::Approx(1.0));
    CHECK(p(0.5) == doctest::Approx(0.25));
    CHECK(p.sup_abs() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(p(ExtendedPoint::finite(2.0)), DomainError);
    ScalarFunction c = ScalarFunction::constant(-3.5, unit);
    CHECK(c(0.7) == -3.5);
    CHECK(c.sup_abs() == 3.5);
  }
  SUBCASE("hat peak and kink") {
    ScalarFunction h = ScalarFunction::hat(0.5, 0.5, unit);
    CHECK(h(0.5) == 0.5);
    CHECK(h(0.25) == doctest::Approx(0.25));
    CHECK(h(1.0) == doctest::Approx(0.0));
    CHECK(h.sup_abs() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(h.breakpoints().size() == 1);
  }
  SUBCASE("rational tail decays to zero at the marker") {
    Interval tail = Interval::make(ExtendedPoint::finite(2.0), ExtendedPoint::plus_inf());
    ScalarFunction r = ScalarFunction::rational_tail(2.0, tail);
    CHECK(r(4.0) == doctest::Approx(0.5));
    CHECK(r(ExtendedPoint::plus_inf()) == 0.0);
    REQUIRE(r.end_limit(ExtendedPoint::plus_inf()).has_value());
    CHECK(*r.end_limit(ExtendedPoint::plus_inf()) == 0.0);
    CHECK(r.sup_abs() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(ScalarFunction::rational_tail(1.0, Interval::closed(-1.0, 1.0)),
                    StructuralError);
  }
  SUBCASE("piecewise selects parts and checks continuity") {
    Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
    std::vector<ScalarFunction> parts;
    parts.push_back(ScalarFunction::polynomial({0.0, -1.0}, Interval::closed(0.0, 0.5)));
    parts.push_back(ScalarFunction::polynomial({-1.0, 1.0}, Interval::closed(0.5, 2.0)));
    parts.push_back(ScalarFunction::rational_tail(
        2.0, Interval::make(ExtendedPoint::finite(2.0), ExtendedPoint::plus_inf())));
    ScalarFunction g = ScalarFunction::piecewise({0.5, 2.0}, std::move(parts), half);
    CHECK(g(0.25) == doctest::Approx(-0.25));
    CHECK(g(0.5) == doctest::Approx(-0.5));  // breakpoint goes to the lower part
    CHECK(g(1.5) == doctest::Approx(0.5));
    CHECK(g(8.0) == doctest::Approx(0.25));
    CHECK(g(ExtendedPoint::plus_inf()) == 0.0);
    CHECK(g.is_continuous_at_breaks());
    CHECK(g.sup_abs() == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<ScalarFunction> jump;
    jump.push_back(ScalarFunction::constant(0.0, Interval::closed(0.0, 0.5)));
    jump.push_back(ScalarFunction::constant(1.0, Interval::closed(0.5, 1.0)));
    ScalarFunction d = ScalarFunction::piecewise({0.5}, std::move(jump), unit);
    CHECK(!d.is_continuous_at_breaks());
  }
  SUBCASE("composed pushes evaluation through the map") {
    Homeomorphism1D b = Homeomorphism1D::affine(0.5, 0.5, unit);
    ScalarFunction g = ScalarFunction::hat(0.5, 0.5, unit);
    ScalarFunction gb = ScalarFunction::composed(g, b);
    CHECK(gb(0.0) == doctest::Approx(0.5));   // g(0.5)
    CHECK(gb(1.0) == doctest::Approx(0.0));   // g(1)
    CHECK(gb(0.5) == doctest::Approx(0.25));  // g(0.75)
    CHECK(gb.domain() == unit);
  }
  SUBCASE("callable with marker limits") {
    Interval half = Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf());
    ScalarFunction f = ScalarFunction::callable([](double x) { return std::exp(-x); }, half,
                                                std::nullopt, 0.0);
    CHECK(f(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(f(ExtendedPoint::plus_inf()) == 0.0);
    CHECK(f.sup_abs() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("vertical maps bound their vertical Lipschitz factor") {
  Interval unit = Interval::closed(0.0, 1.0);

  SUBCASE("affine form") {
    VerticalMap v = VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, unit),
                                        ScalarFunction::constant(-0.6, unit));
    CHECK(v.is_affine());
    CHECK(v.lip_y() == doctest::Approx(0.6));
    CHECK(v.offset_sup() == doctest::Approx(0.5));
    CHECK(v.step_factor(ExtendedPoint::finite(0.3)) == doctest::Approx(0.6));
    CHECK(v.apply(ExtendedPoint::finite(0.5), 2.0) == doctest::Approx(0.5 - 1.2));
    CHECK(v.piece_domain() == unit);
  }
  SUBCASE("varying scale tightens the step factor") {
    VerticalMap v = VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                        ScalarFunction::polynomial({0.0, 0.8}, unit));  // 0.8x
    CHECK(v.lip_y() == doctest::Approx(0.8));
    CHECK(v.step_factor(ExtendedPoint::finite(0.25)) == doctest::Approx(0.2));
  }
  SUBCASE("general rule spot-checks the declared constant") {
    VerticalMap ok = VerticalMap::general(
        [](double x, double y) { return 0.3 * std::sin(y) + x; }, 0.3, unit);
    CHECK(!ok.is_affine());
    CHECK(ok.lip_y() == doctest::Approx(0.3));
    CHECK(ok.apply(ExtendedPoint::finite(0.5), 0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(VerticalMap::general([](double, double y) { return 0.9 * y; }, 0.3, unit),
                    StructuralError);
  }
  SUBCASE("mismatched offset and scale domains are rejected") {
    CHECK_THROWS_AS(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                        ScalarFunction::constant(0.5, Interval::closed(0.0, 2.0))),
                    StructuralError);
  }
}
