#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fraxterp/errors.hpp"
#include "fraxterp/local_ifs.hpp"
#include "fraxterp/scenarios.hpp"

using namespace fraxterp;

namespace {

RBOperator flat_half_op(double s1, double s2) {
  Interval unit = Interval::closed(0.0, 1.0);
  std::vector<Piece> pieces;
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.0, unit)});
  pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.5, unit)});
  PartitionScheme scheme =
      PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit, std::move(pieces), {});
  std::vector<VerticalMap> v;
  v.push_back(VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, unit),
                                  ScalarFunction::constant(s1, unit)));
  v.push_back(VerticalMap::affine(ScalarFunction::hat(0.5, 0.5, unit),
                                  ScalarFunction::constant(s2, unit)));
  return build_rb(std::move(scheme), std::move(v), {});
}

CellSet random_set(const Ambient& amb, const Window& w, int nx, int ny, std::mt19937& rng,
                   double density) {
  CellSet s(amb, w, nx, ny);
  std::bernoulli_distribution on(density);
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy)
      if (on(rng)) s.set(ix, iy);
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

}  // namespace

TEST_CASE("build_local_ifs yields one partial map per piece") {
  Scenario tent = build_example1();
  LocalIFS ifs = build_local_ifs(tent.op);
  REQUIRE(ifs.maps.size() == 2);
  CHECK(ifs.warnings.empty());
  CHECK(ifs.maps[0].X == tent.op.scheme().bounded()[0].domain);
  // h_j(xi, y) = (b_j(xi), p_j(xi) + s_j(xi) y).
  CHECK(ifs.maps[0].f.forward(ExtendedPoint::finite(0.5)).value() == doctest::Approx(0.25));
  CHECK(ifs.maps[0].g.apply(ExtendedPoint::finite(0.5), 1.0) == doctest::Approx(0.25 + 0.8));

  SUBCASE("jump discontinuities in an offset are reported but kept") {
    Interval unit = Interval::closed(0.0, 1.0);
    std::vector<ScalarFunction> parts;
    parts.push_back(ScalarFunction::constant(0.0, Interval::closed(0.0, 0.5)));
    parts.push_back(ScalarFunction::constant(0.4, Interval::closed(0.5, 1.0)));
    ScalarFunction jump = ScalarFunction::piecewise({0.5}, std::move(parts), unit);
    std::vector<Piece> pieces;
    pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.0, unit)});
    pieces.push_back({unit, Homeomorphism1D::affine(0.5, 0.5, unit)});
    PartitionScheme scheme =
        PartitionScheme::make(Ambient::compact(0.0, 1.0), false, unit, std::move(pieces), {});
    std::vector<VerticalMap> v;
    v.push_back(VerticalMap::affine(jump, ScalarFunction::constant(0.5, unit)));
    v.push_back(VerticalMap::affine(ScalarFunction::constant(0.0, unit),
                                    ScalarFunction::constant(0.5, unit)));
    LocalIFS lifted = build_local_ifs(build_rb(std::move(scheme), std::move(v), {}));
    REQUIRE(lifted.maps.size() == 2);
    REQUIRE(lifted.warnings.size() == 1);
    CHECK(lifted.warnings[0].find("BOUNDED#1") != std::string::npos);
  }
}

TEST_CASE("CellSet frame operations") {
  Ambient amb = Ambient::compact(0.0, 1.0);
  Window w{0.0, 1.0, -1.0, 1.0};
  CellSet s(amb, w, 4, 4);
  CHECK(s.empty());
  s.set(0, 0);
  s.set(3, 3);
  CHECK(s.count() == 2);
  CHECK(s.get(3, 3));
  s.clear(3, 3);
  CHECK_FALSE(s.get(3, 3));
  CHECK(s.cell_du() == doctest::Approx(0.25));
  CHECK(s.cell_dy() == doctest::Approx(0.5));
  CHECK(s.cell_diagonal() == doctest::Approx(std::hypot(0.25, 0.5)));
  CHECK(s.center_u(0) == doctest::Approx(0.125));
  CHECK(s.center_y(0) == doctest::Approx(-0.75));

  SUBCASE("locate_cell covers the closed window") {
    int ix = -1, iy = -1;
    CHECK(s.locate_cell(0.0, -1.0, ix, iy));
    CHECK(ix == 0);
    CHECK(iy == 0);
    CHECK(s.locate_cell(1.0, 1.0, ix, iy));
    CHECK(ix == 3);
    CHECK(iy == 3);
    CHECK(s.locate_cell(0.25, 0.0, ix, iy));
    CHECK(ix == 1);
    CHECK(iy == 2);
    CHECK_FALSE(s.locate_cell(1.5, 0.0, ix, iy));
    CHECK_FALSE(s.locate_cell(0.5, -1.2, ix, iy));
    CHECK_FALSE(s.locate_cell(std::nan(""), 0.0, ix, iy));
  }
  SUBCASE("frames must agree for set algebra") {
    CellSet t(amb, w, 4, 8);
    CHECK_FALSE(s.same_frame(t));
    CHECK_THROWS_AS(CellSet::unite(s, t), StructuralError);
    CellSet u(amb, w, 4, 4);
    u.set(1, 1);
    CellSet both = CellSet::unite(s, u);
    CHECK(both.count() == 2);
    CHECK(CellSet::subset(s, both));
    CHECK(CellSet::subset(u, both));
    CHECK_FALSE(CellSet::subset(both, u));
  }
}

TEST_CASE("apply_floc maps the empty set to the empty set") {
  LocalIFS ifs = build_local_ifs(flat_half_op(0.5, 0.5));
  Ambient amb = Ambient::compact(0.0, 1.0);
  CellSet empty(amb, Window{0.0, 1.0, -2.0, 2.0}, 32, 32);
  long clipped = -1;
  CellSet image = apply_floc(ifs, empty, &clipped);
  CHECK(image.empty());
  CHECK(clipped == 0);
}

TEST_CASE("apply_floc distributes over unions and preserves inclusion") {
  LocalIFS ifs = build_local_ifs(build_example1().op);
  Ambient amb = Ambient::compact(0.0, 1.0);
  Window w{0.0, 1.0, -2.5, 2.5};
  std::mt19937 rng(20205);
  for (int trial = 0; trial < 12; ++trial) {
    CellSet a = random_set(amb, w, 48, 48, rng, 0.07);
    CellSet b = random_set(amb, w, 48, 48, rng, 0.07);
    CellSet lhs = apply_floc(ifs, CellSet::unite(a, b));
    CellSet rhs = CellSet::unite(apply_floc(ifs, a), apply_floc(ifs, b));
    CHECK(lhs == rhs);
    CellSet sub = CellSet::unite(a, b);  // a is a subset of this
    CHECK(CellSet::subset(apply_floc(ifs, a), apply_floc(ifs, sub)));
  }
}

TEST_CASE("hausdorff_distance on hand-checkable sets") {
  Ambient amb = Ambient::compact(0.0, 1.0);
  Window w{0.0, 1.0, 0.0, 1.0};
  CellSet a(amb, w, 10, 10);
  CellSet b(amb, w, 10, 10);
  a.set(0, 0);
  b.set(0, 0);
  HausdorffReport same = hausdorff_distance(a, b);
  CHECK(same.distance == doctest::Approx(0.0));
  b.set(9, 0);
  // Centers 0.05 and 0.95 in x, same y: directed a->b 0, b->a 0.9.
  HausdorffReport r = hausdorff_distance(a, b);
  CHECK(r.directed_ab == doctest::Approx(0.0));
  CHECK(r.directed_ba == doctest::Approx(0.9));
  CHECK(r.distance == doctest::Approx(0.9));
  CHECK(r.witness_b[0] == 9);
  CHECK(r.witness_b[1] == 0);

  SUBCASE("diagonal separation uses the window metric") {
    CellSet c(amb, w, 10, 10);
    c.set(3, 4);
    CellSet d(amb, w, 10, 10);
    d.set(6, 8);
    HausdorffReport rd = hausdorff_distance(c, d);
    CHECK(rd.distance == doctest::Approx(std::hypot(0.3, 0.4)));
  }
  SUBCASE("empty-set conventions") {
    CellSet e(amb, w, 10, 10);
    HausdorffReport from_empty = hausdorff_distance(e, a);
    CHECK(from_empty.directed_ab == doctest::Approx(0.0));
    CHECK(std::isinf(from_empty.directed_ba));
    CHECK(std::isinf(from_empty.distance));
    HausdorffReport both_empty = hausdorff_distance(e, CellSet(amb, w, 10, 10));
    CHECK(both_empty.distance == doctest::Approx(0.0));
  }
  SUBCASE("frame mismatch is rejected") {
    CellSet other(amb, w, 10, 12);
    CHECK_THROWS_AS(hausdorff_distance(a, other), StructuralError);
  }
}

TEST_CASE("attractor_iterate settles onto an invariant set") {
  RBOperator op = flat_half_op(0.5, -0.5);
  LocalIFS ifs = build_local_ifs(op);
  Ambient amb = Ambient::compact(0.0, 1.0);
  Window w{0.0, 1.0, -1.5, 1.5};
  CellSet seed(amb, w, 128, 128);
  for (int ix = 0; ix < 128; ++ix) seed.set(ix, 64);  // a horizontal line
  AttractorResult res = attractor_iterate(ifs, seed, 60, 2.5 * seed.cell_diagonal());
  CHECK(res.converged);
  CHECK_FALSE(res.final.empty());
  REQUIRE(res.trace.size() >= 2);
  CHECK(res.trace.back().distance <= 2.5 * seed.cell_diagonal());
  // The limit set hugs the fixed-point graph: compare with the rasterized graph.
  FractalFunction f(op, 1e-9);
  CellSet graph = rasterize_graph(f, w, 128, 128);
  HausdorffReport agree = hausdorff_distance(res.final, graph);
  CHECK(agree.distance <= 6.0 * seed.cell_diagonal());
}

TEST_CASE("graph of the fixed point is nearly invariant under the set operator") {
  Scenario tent = build_example1();
  FractalFunction f(tent.op, 1e-9);
  Window w{0.0, 1.0, -0.5, 1.0};
  HausdorffReport coarse = graph_invariance(build_local_ifs(tent.op), f, w, 256, 256);
  Ambient amb = Ambient::compact(0.0, 1.0);
  double diag256 = CellSet(amb, w, 256, 256).cell_diagonal();
  CHECK(coarse.distance <= 2.0 * diag256);
  HausdorffReport fine = graph_invariance(build_local_ifs(tent.op), f, w, 512, 512);
  double diag512 = CellSet(amb, w, 512, 512).cell_diagonal();
  CHECK(fine.distance <= 2.0 * diag512);
  CHECK(fine.distance <= 0.8 * coarse.distance + 1e-12);
}

TEST_CASE("occupancy dumps have a stable plain-text layout") {
  Ambient amb = Ambient::compact(0.0, 1.0);
  CellSet s(amb, Window{0.0, 1.0, 0.0, 1.0}, 3, 2);
  s.set(0, 0);
  s.set(2, 1);
  std::string pgm = std::tmpnam(nullptr);
  std::string csv = std::tmpnam(nullptr);
  write_pgm(s, pgm);
  write_occupancy_csv(s, csv);
  CHECK(slurp(pgm) == "P2\n3 2\n1\n0 0 1\n1 0 0\n");
  CHECK(slurp(csv) == "0,0,1\n1,0,0\n");
  std::remove(pgm.c_str());
  std::remove(csv.c_str());
}
