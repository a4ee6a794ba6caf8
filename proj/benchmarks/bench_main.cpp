#include <benchmark/benchmark.h>

#include "fraxterp/local_ifs.hpp"
#include "fraxterp/lp_analysis.hpp"
#include "fraxterp/scenarios.hpp"

using namespace fraxterp;

namespace {

const Scenario& tent() {
  static Scenario s = build_example1();
  return s;
}

const Scenario& halfline() {
  static Scenario s = build_halfline_global();
  return s;
}

void BM_evaluate_certified(benchmark::State& state) {
  FractalFunction f(tent().op, 1e-9);
  double x = 0.0;
  for (auto _ : state) {
    x += 0.371;
    if (x > 1.0) x -= 1.0;
    benchmark::DoNotOptimize(evaluate(f, ExtendedPoint::finite(x), 1e-9));
  }
}
BENCHMARK(BM_evaluate_certified);

void BM_evaluate_halfline(benchmark::State& state) {
  FractalFunction f(halfline().op, 1e-9);
  double x = 0.0;
  for (auto _ : state) {
    x += 1.7;
    if (x > 40.0) x -= 40.0;
    benchmark::DoNotOptimize(evaluate(f, ExtendedPoint::finite(x), 1e-9));
  }
}
BENCHMARK(BM_evaluate_halfline);

void BM_grid_sweep(benchmark::State& state) {
  const RBOperator& op = tent().op;
  GridFunction g(op.scheme().ambient(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    g = apply_rb(op, g);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_grid_sweep)->Arg(4096)->Arg(1 << 16)->Arg(1 << 20);

void BM_fixed_point_solve(benchmark::State& state) {
  const RBOperator& op = tent().op;
  for (auto _ : state) {
    FractalFunction f = fixed_point(op, 1e-8, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_fixed_point_solve)->Arg(4096)->Arg(1 << 16);

CellSet graph_cells(const Scenario& s, int n) {
  LocalIFS ifs = build_local_ifs(s.op);
  FractalFunction f(s.op, 1e-8);
  Window w{0.0, 1.0, -1.5, 1.5};
  return rasterize_graph(f, w, n, n);
}

void BM_apply_floc(benchmark::State& state) {
  LocalIFS ifs = build_local_ifs(tent().op);
  CellSet g = graph_cells(tent(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CellSet image = apply_floc(ifs, g);
    benchmark::DoNotOptimize(image);
  }
  state.SetItemsProcessed(state.iterations() * g.count());
}
BENCHMARK(BM_apply_floc)->Arg(256)->Arg(1024);

void BM_hausdorff(benchmark::State& state) {
  LocalIFS ifs = build_local_ifs(tent().op);
  CellSet g = graph_cells(tent(), static_cast<int>(state.range(0)));
  CellSet image = apply_floc(ifs, g);
  for (auto _ : state) {
    HausdorffReport rep = hausdorff_distance(image, g);
    benchmark::DoNotOptimize(rep);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_hausdorff)->Arg(256)->Arg(1024);

void BM_lp_norm(benchmark::State& state) {
  Interval unit = Interval::closed(0.0, 1.0);
  ScalarFunction hat = ScalarFunction::hat(0.5, 0.5, unit);
  QuadratureRule rule;
  rule.subdivisions = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(hat, unit, 2.0, rule));
}
BENCHMARK(BM_lp_norm)->Arg(64)->Arg(1024);

void BM_lp_report(benchmark::State& state) {
  QuadratureRule rule;
  for (auto _ : state) {
    LpReport rep = lp_contractivity(tent().op, 1.0, rule);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_lp_report);

}  // namespace

BENCHMARK_MAIN();
