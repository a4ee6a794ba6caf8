#pragma once

#include <string>
#include <vector>

#include "fraxterp/local_ifs.hpp"
#include "fraxterp/lp_analysis.hpp"
#include "fraxterp/scenarios.hpp"

namespace fraxterp {

struct EvaluationSettings {
  double tol = 1e-9;
  int grid_resolution = 4096;
  int max_depth = 256;
};

struct AttractorSettings {
  Window window;
  int nx = 512, ny = 512;
  int iters = 40;
  double stop_tol = 0.0;
};

struct AnalysisSettings {
  std::vector<double> p_values;  // may contain infinity
  QuadratureRule quadrature;
  AttractorSettings attractor;
};

/**
 * A scenario plus run settings, loadable from a strict JSON document: every
 * key must be known, intervals may use "inf"/"-inf" endpoints, and nested
 * maps/functions carry no domains of their own (domains derive from the
 * enclosing piece).  parse errors carry line/field diagnostics.
 */
struct ScenarioConfig {
  Scenario scenario;
  EvaluationSettings evaluation;
  AnalysisSettings analysis;
};

ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path);

/// Serializes a scenario (with the given settings) into a document that
/// parse_config accepts and rebuilds identically.  Scenarios with callable
/// offsets or general vertical maps are not serializable.
std::string dump_config(const Scenario& scenario, const EvaluationSettings& evaluation,
                        const AnalysisSettings& analysis);

}  // namespace fraxterp
