#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "fraxterp/algebra.hpp"
#include "fraxterp/config.hpp"
#include "fraxterp/errors.hpp"
#include "fraxterp/local_ifs.hpp"
#include "fraxterp/lp_analysis.hpp"
#include "output.hpp"

namespace fraxterp::cli {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw StructuralError(what + ": expected a number, got '" + s + "'");
  return v;
}

ExtendedPoint parse_point_arg(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtendedPoint::plus_inf();
  if (s == "-inf") return ExtendedPoint::minus_inf();
  return ExtendedPoint::finite(parse_number(s, "--x"));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string item;
  while (std::getline(iss, item, sep)) out.push_back(item);
  return out;
}

const char* regime_name(LpRegime r) {
  switch (r) {
    case LpRegime::SubOne: return "(0,1)";
    case LpRegime::OneToInf: return "[1,inf)";
    case LpRegime::Infinity: return "inf";
  }
  return "?";
}

}  // namespace

int run_validate(const std::string& cfg_path) {
  ScenarioConfig cfg = load_config(cfg_path);
  const RBOperator& op = cfg.scenario.op;
  ValidationReport rep = validate_partition(op.scheme(), 4096);
  if (!rep.ok) {
    for (const Violation& v : rep.violations)
      std::printf("violation: %s at u=%.12g: %s\n", v.condition.c_str(), v.witness_unit,
                  v.description.c_str());
    return 1;
  }
  std::printf("(P1)/(P2) satisfied, contraction %g\n", op.contraction());
  return 0;
}

int run_sample(const std::string& cfg_path, const std::string& out, const std::string& svg,
               int points) {
  ScenarioConfig cfg = load_config(cfg_path);
  int cells = points > 0 ? points : cfg.evaluation.grid_resolution;
  if (cells < 2) throw StructuralError("sample: needs at least 2 points");
  Series s = sample_series(cfg.scenario.op, cells, cfg.evaluation.tol);
  write_series_csv(s, out);
  std::printf("wrote %zu rows to %s\n", s.x.size(), out.c_str());
  if (!svg.empty()) {
    write_series_svg(s, cfg.scenario.op.scheme().ambient(), svg);
    std::printf("wrote plot to %s\n", svg.c_str());
  }
  return 0;
}

int run_evaluate(const std::string& cfg_path, const std::string& x, double tol) {
  ScenarioConfig cfg = load_config(cfg_path);
  double use_tol = tol > 0.0 ? tol : cfg.evaluation.tol;
  ExtendedPoint at = parse_point_arg(x);
  FractalFunction f(cfg.scenario.op, use_tol, cfg.evaluation.max_depth);
  try {
    double v = evaluate(f, at, use_tol);
    std::printf("%.10f ± %g\n", v, use_tol);
  } catch (const DepthExceededError& e) {
    std::printf("%.10f ± %g (depth cap hit before certifying %g)\n", e.partial_value,
                e.achieved_bound, use_tol);
    return 1;
  }
  return 0;
}

int run_lpcheck(const std::string& cfg_path, const std::string& p) {
  ScenarioConfig cfg = load_config(cfg_path);
  double pv = p == "inf" ? std::numeric_limits<double>::infinity() : parse_number(p, "--p");
  LpReport r = lp_contractivity(cfg.scenario.op, pv, cfg.analysis.quadrature);
  std::printf("criterion %g\n", r.criterion_value);
  std::printf("p=%s regime %s: %s (%s)\n", p.c_str(), regime_name(r.regime),
              r.passes ? "PASS" : "FAIL", r.reason.c_str());
  std::printf("sup-norm factor %g\n", r.sup_norm_factor);
  return r.passes ? 0 : 1;
}

int run_basis(const std::string& cfg_path, const std::string& orders, const std::string& nodes,
              const std::string& out, int points) {
  ScenarioConfig cfg = load_config(cfg_path);
  const RBOperator& op = cfg.scenario.op;
  const PartitionScheme& scheme = op.scheme();
  size_t nb = scheme.bounded().size();
  size_t total = nb + scheme.unbounded().size();

  std::vector<int> all_orders;
  for (const std::string& tok : split(orders, ','))
    all_orders.push_back(static_cast<int>(parse_number(tok, "--orders")));
  if (all_orders.size() != total)
    throw StructuralError("basis: --orders needs one entry per piece (" + std::to_string(total) +
                          ")");
  std::vector<std::vector<double>> all_nodes;
  for (const std::string& group : split(nodes, ';')) {
    std::vector<double> g;
    for (const std::string& tok : split(group, ',')) g.push_back(parse_number(tok, "--nodes"));
    all_nodes.push_back(std::move(g));
  }
  if (all_nodes.size() != total)
    throw StructuralError("basis: --nodes needs one ';'-separated group per piece (" +
                          std::to_string(total) + ")");

  ScaleTuple scales;
  for (const VerticalMap& v : op.bounded_vertical()) {
    if (!v.is_affine()) throw StructuralError("basis: requires affine vertical maps");
    scales.bounded_scales.push_back(v.scale());
  }
  for (const VerticalMap& v : op.unbounded_vertical()) {
    if (!v.is_affine()) throw StructuralError("basis: requires affine vertical maps");
    scales.unbounded_scales.push_back(v.scale());
  }

  NodeSpec spec;
  spec.bounded.assign(all_nodes.begin(), all_nodes.begin() + nb);
  spec.unbounded.assign(all_nodes.begin() + nb, all_nodes.end());
  std::vector<int> border(all_orders.begin(), all_orders.begin() + nb);
  std::vector<int> uorder(all_orders.begin() + nb, all_orders.end());

  BasisSet basis = lagrange_basis(scheme, scales, border, uorder, spec, cfg.evaluation.tol);

  int cells = points > 0 ? points : 256;
  const Ambient& amb = scheme.ambient();
  std::ofstream os(out);
  if (!os) throw StructuralError("cannot open output file " + out);
  os << "x";
  for (int k = 1; k <= basis.dimension; ++k) os << ",b" << k;
  os << "\n";
  for (int i = 0; i <= cells; ++i) {
    ExtendedPoint x = amb.from_unit(static_cast<double>(i) / cells);
    os << fmt_point(x);
    for (const FractalFunction& e : basis.elements)
      os << "," << fmt_sig(evaluate(e, x, cfg.evaluation.tol));
    os << "\n";
  }
  std::printf("dimension %d, wrote %d rows to %s\n", basis.dimension, cells + 1, out.c_str());
  return 0;
}

int run_tensor_sample(const std::string& cfg_a, const std::string& cfg_b, const std::string& out,
                      int points) {
  ScenarioConfig a = load_config(cfg_a);
  ScenarioConfig b = load_config(cfg_b);
  int cells = points > 0 ? points : 64;
  if (cells < 2) throw StructuralError("tensor-sample: needs at least 2 points per axis");
  double tol = std::min(a.evaluation.tol, b.evaluation.tol);
  TensorFunction t = tensor(FractalFunction(a.scenario.op, tol), FractalFunction(b.scenario.op, tol));
  const Ambient& amb_a = a.scenario.op.scheme().ambient();
  const Ambient& amb_b = b.scenario.op.scheme().ambient();

  std::ofstream os(out);
  if (!os) throw StructuralError("cannot open output file " + out);
  os << "x,xt,f\n";
  for (int i = 0; i <= cells; ++i) {
    ExtendedPoint x = amb_a.from_unit(static_cast<double>(i) / cells);
    for (int j = 0; j <= cells; ++j) {
      ExtendedPoint xt = amb_b.from_unit(static_cast<double>(j) / cells);
      os << fmt_point(x) << "," << fmt_point(xt) << ","
         << fmt_sig(evaluate_tensor(t, x, xt, tol)) << "\n";
    }
  }
  std::printf("wrote %d rows to %s\n", (cells + 1) * (cells + 1), out.c_str());
  return 0;
}

int run_attractor(const std::string& cfg_path, const std::vector<double>& window,
                  const std::vector<int>& res, int iters, const std::string& out) {
  ScenarioConfig cfg = load_config(cfg_path);
  AttractorSettings at = cfg.analysis.attractor;
  if (!window.empty()) {
    if (window.size() != 4)
      throw StructuralError("attractor: --window needs ULO UHI YLO YHI");
    at.window = {window[0], window[1], window[2], window[3]};
  }
  if (!res.empty()) {
    if (res.size() != 2) throw StructuralError("attractor: --res needs NX NY");
    at.nx = res[0];
    at.ny = res[1];
  }
  if (iters > 0) at.iters = iters;
  if (!(at.window.ulo < at.window.uhi) || !(at.window.ylo < at.window.yhi))
    throw StructuralError("attractor: window must have positive extent");
  if (at.nx < 2 || at.ny < 2) throw StructuralError("attractor: resolution must be at least 2x2");

  const RBOperator& op = cfg.scenario.op;
  LocalIFS ifs = build_local_ifs(op);
  for (const std::string& w : ifs.warnings) std::printf("warning: %s\n", w.c_str());
  CellSet seed(op.scheme().ambient(), at.window, at.nx, at.ny);
  for (int ix = 0; ix < at.nx; ++ix)
    for (int iy = 0; iy < at.ny; ++iy) seed.set(ix, iy);
  double stop = at.stop_tol > 0.0 ? at.stop_tol : 1.5 * seed.cell_diagonal();
  AttractorResult result = attractor_iterate(ifs, seed, at.iters, stop);

  if (out.size() >= 4 && out.substr(out.size() - 4) == ".pgm")
    write_pgm(result.final, out);
  else
    write_occupancy_csv(result.final, out);
  double last = result.trace.empty() ? 0.0 : result.trace.back().distance;
  std::printf("%s after %zu steps, final step distance %g, occupied %ld, clipped %ld\n",
              result.converged ? "converged" : "did not converge", result.trace.size(), last,
              result.final.count(), result.clipped_total);
  std::printf("wrote %s\n", out.c_str());
  return result.converged ? 0 : 1;
}

int run_verify(const std::string& cfg_path) {
  ScenarioConfig cfg = load_config(cfg_path);
  const RBOperator& op = cfg.scenario.op;
  double tol = cfg.evaluation.tol;
  double ell = op.contraction();
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) all_ok = false;
  };

  {
    ValidationReport rep = validate_partition(op.scheme(), 4096);
    std::string detail = rep.ok ? "cover and interior-disjointness hold"
                                : rep.violations.front().description;
    report("partition (P1)/(P2)", rep.ok, detail);
  }
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "contraction %g", ell);
    report("uniform y-contraction", ell < 1.0, buf);
  }
  FractalFunction f = fixed_point(op, tol, cfg.evaluation.grid_resolution);
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid residual %.3g (cap %.3g)", f.grid_residual(),
                  2.0 * tol);
    report("grid fixed point", f.grid_residual() <= 2.0 * tol, buf);
  }
  {
    double r = residual(op, f, 200);
    char buf[96];
    std::snprintf(buf, sizeof buf, "sup residual %.3g over 200 probes (cap %.3g)", r, 4.0 * tol);
    report("self-referential equation", r <= 4.0 * tol, buf);
  }
  {
    std::vector<double> ratios = iteration_ratios(op, 1 << 14, 14);
    bool ok = true;
    double worst = 0.0;
    for (size_t k = 3; k + 1 <= ratios.size() && k <= 13; ++k) {
      worst = std::max(worst, ratios[k - 1]);
      if (ratios[k - 1] > ell + 0.05) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max ratio %.4f (cap %.4f)", worst, ell + 0.05);
    report("iterate contraction rate", ok, buf);
  }
  {
    LocalIFS ifs = build_local_ifs(op);
    double ybound = std::min(op.value_bound() * 1.1 + 0.1, 25.0);
    Window w{0.0, 1.0, -ybound, ybound};
    const Ambient& amb = op.scheme().ambient();
    CellSet empty(amb, w, 64, 64);
    bool ok = apply_floc(ifs, empty).empty();
    std::mt19937 rng(411);
    std::bernoulli_distribution on(0.08);
    for (int trial = 0; trial < 5 && ok; ++trial) {
      CellSet a(amb, w, 64, 64), b(amb, w, 64, 64);
      for (int ix = 0; ix < 64; ++ix)
        for (int iy = 0; iy < 64; ++iy) {
          if (on(rng)) a.set(ix, iy);
          if (on(rng)) b.set(ix, iy);
        }
      CellSet u = CellSet::unite(a, b);
      ok = ok && (apply_floc(ifs, u) == CellSet::unite(apply_floc(ifs, a), apply_floc(ifs, b)));
      ok = ok && CellSet::subset(apply_floc(ifs, a), apply_floc(ifs, u));
    }
    report("set operator algebra", ok, "empty set, unions, monotonicity");
  }
  {
    bool affine = true;
    for (const VerticalMap& v : op.bounded_vertical()) affine = affine && v.is_affine();
    for (const VerticalMap& v : op.unbounded_vertical()) affine = affine && v.is_affine();
    if (!affine) {
      std::printf("[SKIP] %-28s %s\n", "offset-to-fixed-point linearity",
                  "non-affine vertical maps");
    } else {
      ScaleTuple scales;
      for (const VerticalMap& v : op.bounded_vertical())
        scales.bounded_scales.push_back(v.scale());
      for (const VerticalMap& v : op.unbounded_vertical())
        scales.unbounded_scales.push_back(v.scale());
      std::mt19937 rng(2203);
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      auto constant_offsets = [&](double base) {
        OffsetTuple t;
        for (const Piece& piece : op.scheme().bounded())
          t.bounded_offsets.push_back(
              ScalarFunction::constant(base * coef(rng), piece.domain));
        for (const Piece& piece : op.scheme().unbounded())
          t.unbounded_offsets.push_back(
              ScalarFunction::constant(base * coef(rng), piece.domain));
        return t;
      };
      bool ok = true;
      double worst = 0.0;
      for (int trial = 0; trial < 2 && ok; ++trial) {
        OffsetTuple p = constant_offsets(1.0), q = constant_offsets(1.0);
        double a = coef(rng), b = coef(rng);
        OffsetTuple combo;
        for (size_t i = 0; i < p.bounded_offsets.size(); ++i)
          combo.bounded_offsets.push_back(ScalarFunction::constant(
              a * p.bounded_offsets[i].param_a() + b * q.bounded_offsets[i].param_a(),
              op.scheme().bounded()[i].domain));
        for (size_t i = 0; i < p.unbounded_offsets.size(); ++i)
          combo.unbounded_offsets.push_back(ScalarFunction::constant(
              a * p.unbounded_offsets[i].param_a() + b * q.unbounded_offsets[i].param_a(),
              op.scheme().unbounded()[i].domain));
        FractalFunction fp = theta(op.scheme(), scales, p, tol);
        FractalFunction fq = theta(op.scheme(), scales, q, tol);
        FractalFunction fc = theta(op.scheme(), scales, combo, tol);
        for (int i = 1; i < 20 && ok; ++i) {
          ExtendedPoint x = op.scheme().ambient().from_unit(i / 20.0);
          double lhs = evaluate(fc, x, tol);
          double rhs = a * evaluate(fp, x, tol) + b * evaluate(fq, x, tol);
          worst = std::max(worst, std::fabs(lhs - rhs));
          if (std::fabs(lhs - rhs) > 10.0 * tol) ok = false;
        }
      }
      char buf[96];
      std::snprintf(buf, sizeof buf, "max deviation %.3g (cap %.3g)", worst, 10.0 * tol);
      report("offset-to-fixed-point linearity", ok, buf);
    }
  }
  return all_ok ? 0 : 1;
}

int run_figures(const std::string& outdir, bool dump_configs, bool quiet) {
  std::filesystem::create_directories(outdir);
  Scenario tent = build_example1();
  Interval half_closed =
      Interval::make(ExtendedPoint::finite(0.0), ExtendedPoint::plus_inf(), true, true);
  Homeomorphism1D j = Homeomorphism1D::mobius(0.0, 1.0, 1.0, 1.0, half_closed);
  Scenario pulled = pullback_scenario(tent, j);
  Scenario half = build_halfline_global();

  const int cells = 4096;
  const double tol = 1e-8;
  struct Item {
    const char* stem;
    const Scenario* sc;
  } items[] = {{"figure1_left", &tent}, {"figure1_right", &pulled}, {"figure2", &half}};

  EvaluationSettings ev;
  ev.tol = tol;
  ev.grid_resolution = cells;
  for (const Item& item : items) {
    Series s = sample_series(item.sc->op, cells, tol);
    std::string base = outdir + "/" + item.stem;
    write_series_csv(s, base + ".csv");
    write_series_svg(s, item.sc->op.scheme().ambient(), base + ".svg");
    if (!quiet) std::printf("wrote %s.csv and %s.svg\n", base.c_str(), base.c_str());
    if (dump_configs) {
      std::ofstream os(base + ".json");
      if (!os) throw StructuralError("cannot open output file " + base + ".json");
      os << dump_config(*item.sc, ev, AnalysisSettings{});
      if (!quiet) std::printf("wrote %s.json\n", base.c_str());
    }
  }
  return 0;
}

}  // namespace fraxterp::cli
