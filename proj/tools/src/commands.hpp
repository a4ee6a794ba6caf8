#pragma once

#include <string>
#include <vector>

namespace fraxterp::cli {

int run_validate(const std::string& cfg_path);
int run_sample(const std::string& cfg_path, const std::string& out, const std::string& svg,
               int points);
int run_evaluate(const std::string& cfg_path, const std::string& x, double tol);
int run_lpcheck(const std::string& cfg_path, const std::string& p);
int run_basis(const std::string& cfg_path, const std::string& orders, const std::string& nodes,
              const std::string& out, int points);
int run_tensor_sample(const std::string& cfg_a, const std::string& cfg_b, const std::string& out,
                      int points);
int run_attractor(const std::string& cfg_path, const std::vector<double>& window,
                  const std::vector<int>& res, int iters, const std::string& out);
int run_verify(const std::string& cfg_path);
int run_figures(const std::string& outdir, bool dump_configs, bool quiet = false);

}  // namespace fraxterp::cli
