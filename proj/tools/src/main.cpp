#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fraxterp/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fraxterp: local fractal interpolation on unbounded domains"};
  app.require_subcommand(1);

  std::string cfg, cfg_b, out, svg, x_arg, p_arg, orders, nodes, outdir;
  double tol = 0.0;
  int points = 0, iters = 0;
  std::vector<double> window;
  std::vector<int> res;
  bool dump_configs = false;

  CLI::App* validate = app.add_subcommand("validate", "check the partition conditions");
  validate->add_option("config", cfg, "scenario config file")->required();

  CLI::App* sample = app.add_subcommand("sample", "tabulate the fixed point on a grid");
  sample->add_option("config", cfg, "scenario config file")->required();
  sample->add_option("--out", out, "CSV output path")->required();
  sample->add_option("--svg", svg, "also write an SVG plot");
  sample->add_option("--points", points, "grid cells (default: config grid_resolution)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate the fixed point at a point");
  evaluate->add_option("config", cfg, "scenario config file")->required();
  evaluate->add_option("--x", x_arg, "evaluation point (number, inf, or -inf)")->required();
  evaluate->add_option("--tol", tol, "certified tolerance (default: config tol)");

  CLI::App* lpcheck = app.add_subcommand("lpcheck", "compute the Lp contractivity criterion");
  lpcheck->add_option("config", cfg, "scenario config file")->required();
  lpcheck->add_option("--p", p_arg, "exponent (positive number or inf)")->required();

  CLI::App* basis = app.add_subcommand("basis", "tabulate a fractal Lagrange basis");
  basis->add_option("config", cfg, "scenario config file")->required();
  basis->add_option("--orders", orders, "per-piece orders, e.g. 2,2")->required();
  basis->add_option("--nodes", nodes, "per-piece nodes, e.g. 0,1;0.25,0.75")->required();
  basis->add_option("--out", out, "CSV output path")->required();
  basis->add_option("--points", points, "grid cells (default 256)");

  CLI::App* tensor = app.add_subcommand("tensor-sample", "tabulate a tensor-product surface");
  tensor->add_option("config", cfg, "first-axis scenario config")->required();
  tensor->add_option("config_b", cfg_b, "second-axis scenario config")->required();
  tensor->add_option("--out", out, "CSV output path")->required();
  tensor->add_option("--points", points, "grid cells per axis (default 64)");

  CLI::App* attractor = app.add_subcommand("attractor", "iterate the set operator to its attractor");
  attractor->add_option("config", cfg, "scenario config file")->required();
  attractor->add_option("--window", window, "ULO UHI YLO YHI")->expected(4);
  attractor->add_option("--res", res, "NX NY")->expected(2);
  attractor->add_option("--iters", iters, "iteration cap (default: config)");
  attractor->add_option("--out", out, "output path (.pgm or CSV)")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the scenario self-checks");
  verify->add_option("config", cfg, "scenario config file")->required();

  CLI::App* figures = app.add_subcommand("figures", "regenerate the bundled figure datasets");
  figures->add_option("--outdir", outdir, "output directory")->required();
  figures->add_flag("--dump-config", dump_configs, "also write scenario configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return fraxterp::cli::run_validate(cfg);
    if (sample->parsed()) return fraxterp::cli::run_sample(cfg, out, svg, points);
    if (evaluate->parsed()) return fraxterp::cli::run_evaluate(cfg, x_arg, tol);
    if (lpcheck->parsed()) return fraxterp::cli::run_lpcheck(cfg, p_arg);
    if (basis->parsed()) return fraxterp::cli::run_basis(cfg, orders, nodes, out, points);
    if (tensor->parsed()) return fraxterp::cli::run_tensor_sample(cfg, cfg_b, out, points);
    if (attractor->parsed()) return fraxterp::cli::run_attractor(cfg, window, res, iters, out);
    if (verify->parsed()) return fraxterp::cli::run_verify(cfg);
    if (figures->parsed()) return fraxterp::cli::run_figures(outdir, dump_configs);
  } catch (const fraxterp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const fraxterp::DepthExceededError& e) {
    std::fprintf(stderr, "evaluation depth exceeded: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
