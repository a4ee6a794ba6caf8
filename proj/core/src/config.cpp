#include "fraxterp/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fraxterp/errors.hpp"
#include "json.hpp"

namespace fraxterp {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key '" + item.key() + "'");
  }
}

const Json& get(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  return j.at(key);
}

double get_number(const Json& j, const std::string& path, const char* key) {
  const Json& v = get(j, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const std::string& path, const char* key, double def) {
  if (!j.contains(key)) return def;
  const Json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int int_or(const Json& j, const std::string& path, const char* key, int def) {
  if (!j.contains(key)) return def;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool bool_or(const Json& j, const std::string& path, const char* key, bool def) {
  if (!j.contains(key)) return def;
  const Json& v = j.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const Json& j, const std::string& path, const char* key) {
  const Json& v = get(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

ExtendedPoint parse_endpoint(const Json& v, const std::string& path) {
  if (v.is_number()) return ExtendedPoint::finite(v.get<double>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return ExtendedPoint::plus_inf();
    if (s == "-inf") return ExtendedPoint::minus_inf();
    fail(path, "expected a number, \"inf\", or \"-inf\", got \"" + s + "\"");
  }
  fail(path, "expected a number, \"inf\", or \"-inf\"");
}

Interval parse_interval(const Json& j, const std::string& path) {
  check_keys(j, path, {"lo", "hi", "closed_lo", "closed_hi"});
  ExtendedPoint lo = parse_endpoint(get(j, path, "lo"), path + ".lo");
  ExtendedPoint hi = parse_endpoint(get(j, path, "hi"), path + ".hi");
  bool clo = bool_or(j, path, "closed_lo", true);
  bool chi = bool_or(j, path, "closed_hi", true);
  try {
    return Interval::make(lo, hi, clo, chi);
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
}

Homeomorphism1D parse_map(const Json& j, const std::string& path, const Interval& domain) {
  std::string kind = get_string(j, path, "kind");
  try {
    if (kind == "affine") {
      check_keys(j, path, {"kind", "a", "b"});
      return Homeomorphism1D::affine(get_number(j, path, "a"), get_number(j, path, "b"), domain);
    }
    if (kind == "mobius") {
      check_keys(j, path, {"kind", "a", "b", "c", "d"});
      return Homeomorphism1D::mobius(get_number(j, path, "a"), get_number(j, path, "b"),
                                     get_number(j, path, "c"), get_number(j, path, "d"), domain);
    }
    if (kind == "atan_scaled") {
      check_keys(j, path, {"kind"});
      return Homeomorphism1D::atan_scaled(domain);
    }
    if (kind == "tan_scaled") {
      check_keys(j, path, {"kind"});
      return Homeomorphism1D::tan_scaled(domain);
    }
    if (kind == "translation") {
      check_keys(j, path, {"kind", "t"});
      return Homeomorphism1D::translation(get_number(j, path, "t"), domain);
    }
    if (kind == "composition") {
      check_keys(j, path, {"kind", "outer", "inner"});
      Homeomorphism1D inner = parse_map(get(j, path, "inner"), path + ".inner", domain);
      Homeomorphism1D outer =
          parse_map(get(j, path, "outer"), path + ".outer", inner.codomain());
      return Homeomorphism1D::compose(outer, inner);
    }
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown map kind '" + kind + "'");
}

std::vector<double> parse_number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

ScalarFunction parse_scalar(const Json& j, const std::string& path, const Interval& domain) {
  std::string kind = get_string(j, path, "kind");
  try {
    if (kind == "constant") {
      check_keys(j, path, {"kind", "value"});
      return ScalarFunction::constant(get_number(j, path, "value"), domain);
    }
    if (kind == "polynomial") {
      check_keys(j, path, {"kind", "coefficients"});
      return ScalarFunction::polynomial(
          parse_number_array(get(j, path, "coefficients"), path + ".coefficients"), domain);
    }
    if (kind == "hat") {
      check_keys(j, path, {"kind", "height", "center"});
      return ScalarFunction::hat(get_number(j, path, "height"), get_number(j, path, "center"),
                                 domain);
    }
    if (kind == "rational_tail") {
      check_keys(j, path, {"kind", "numerator"});
      return ScalarFunction::rational_tail(get_number(j, path, "numerator"), domain);
    }
    if (kind == "piecewise") {
      check_keys(j, path, {"kind", "breaks", "parts"});
      std::vector<double> breaks = parse_number_array(get(j, path, "breaks"), path + ".breaks");
      const Json& parts_json = get(j, path, "parts");
      if (!parts_json.is_array() || parts_json.size() != breaks.size() + 1)
        fail(path + ".parts", "expected an array with one more entry than breaks");
      std::vector<ScalarFunction> parts;
      for (size_t i = 0; i < parts_json.size(); ++i) {
        ExtendedPoint seg_lo = i == 0 ? domain.lo : ExtendedPoint::finite(breaks[i - 1]);
        ExtendedPoint seg_hi =
            i == breaks.size() ? domain.hi : ExtendedPoint::finite(breaks[i]);
        Interval seg = Interval::make(seg_lo, seg_hi, i == 0 ? domain.closed_lo : true,
                                      i == breaks.size() ? domain.closed_hi : true);
        parts.push_back(
            parse_scalar(parts_json[i], path + ".parts[" + std::to_string(i) + "]", seg));
      }
      return ScalarFunction::piecewise(std::move(breaks), std::move(parts), domain);
    }
    if (kind == "composed") {
      check_keys(j, path, {"kind", "outer", "outer_domain", "map"});
      Homeomorphism1D map = parse_map(get(j, path, "map"), path + ".map", domain);
      // The outer function may live on more than the inner map's image (a
      // shared shape composed with several maps); an explicit outer_domain
      // overrides the default.
      Interval outer_domain = map.codomain();
      if (j.contains("outer_domain"))
        outer_domain = parse_interval(j.at("outer_domain"), path + ".outer_domain");
      ScalarFunction outer = parse_scalar(get(j, path, "outer"), path + ".outer", outer_domain);
      return ScalarFunction::composed(std::move(outer), std::move(map));
    }
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown function kind '" + kind + "'");
}

Ambient parse_ambient(const Json& j, const std::string& path) {
  std::string kind = get_string(j, path, "kind");
  if (kind == "compact") {
    check_keys(j, path, {"kind", "lo", "hi"});
    double lo = get_number(j, path, "lo");
    double hi = get_number(j, path, "hi");
    try {
      return Ambient::compact(lo, hi);
    } catch (const StructuralError& e) {
      fail(path, e.what());
    }
  }
  if (kind == "half_line") {
    check_keys(j, path, {"kind"});
    return Ambient::half_line();
  }
  if (kind == "real_line") {
    check_keys(j, path, {"kind"});
    return Ambient::real_line();
  }
  fail(path + ".kind", "unknown ambient kind '" + kind + "'");
}

Window parse_window(const Json& j, const std::string& path) {
  check_keys(j, path, {"ulo", "uhi", "ylo", "yhi"});
  Window w;
  w.ulo = get_number(j, path, "ulo");
  w.uhi = get_number(j, path, "uhi");
  w.ylo = get_number(j, path, "ylo");
  w.yhi = get_number(j, path, "yhi");
  return w;
}

// ----- serialization -----

Json endpoint_json(const ExtendedPoint& p) {
  if (p.is_plus_inf()) return "inf";
  if (p.is_minus_inf()) return "-inf";
  return p.value();
}

Json interval_json(const Interval& iv) {
  Json j;
  j["lo"] = endpoint_json(iv.lo);
  j["hi"] = endpoint_json(iv.hi);
  j["closed_lo"] = iv.closed_lo;
  j["closed_hi"] = iv.closed_hi;
  return j;
}

Json map_json(const Homeomorphism1D& m) {
  Json j;
  switch (m.kind()) {
    case MapKind::Affine:
      j["kind"] = "affine";
      j["a"] = m.params()[0];
      j["b"] = m.params()[1];
      break;
    case MapKind::Mobius:
      j["kind"] = "mobius";
      j["a"] = m.params()[0];
      j["b"] = m.params()[1];
      j["c"] = m.params()[2];
      j["d"] = m.params()[3];
      break;
    case MapKind::AtanScaled: j["kind"] = "atan_scaled"; break;
    case MapKind::TanScaled: j["kind"] = "tan_scaled"; break;
    case MapKind::Translation:
      j["kind"] = "translation";
      j["t"] = m.params()[0];
      break;
    case MapKind::Composition:
      j["kind"] = "composition";
      j["outer"] = map_json(*m.outer());
      j["inner"] = map_json(*m.inner());
      break;
  }
  return j;
}

Json scalar_json(const ScalarFunction& f) {
  Json j;
  switch (f.kind()) {
    case ScalarKind::Constant:
      j["kind"] = "constant";
      j["value"] = f.param_a();
      break;
    case ScalarKind::Polynomial:
      j["kind"] = "polynomial";
      j["coefficients"] = f.coefficients();
      break;
    case ScalarKind::Hat:
      j["kind"] = "hat";
      j["height"] = f.param_a();
      j["center"] = f.param_b();
      break;
    case ScalarKind::Piecewise: {
      j["kind"] = "piecewise";
      j["breaks"] = f.piece_breaks();
      Json parts = Json::array();
      for (const ScalarFunction& part : f.piece_parts()) parts.push_back(scalar_json(part));
      j["parts"] = parts;
      break;
    }
    case ScalarKind::RationalTail:
      j["kind"] = "rational_tail";
      j["numerator"] = f.param_a();
      break;
    case ScalarKind::Composed:
      j["kind"] = "composed";
      j["outer"] = scalar_json(*f.composed_outer());
      j["outer_domain"] = interval_json(f.composed_outer()->domain());
      j["map"] = map_json(*f.composed_map());
      break;
    case ScalarKind::Callable:
      throw StructuralError("dump_config: callable functions are not serializable");
  }
  return j;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream oss;
    oss << "config: " << origin << ":" << line << ": " << e.what();
    throw ConfigError(oss.str());
  }

  check_keys(root, origin,
             {"name", "ambient", "compactified", "core", "pieces", "permutation", "evaluation",
              "analysis"});

  Ambient ambient = parse_ambient(get(root, origin, "ambient"), origin + ".ambient");
  bool compactified =
      bool_or(root, origin, "compactified", ambient.kind() != AmbientKind::CompactInterval);

  std::optional<Interval> core;
  if (root.contains("core")) core = parse_interval(root.at("core"), origin + ".core");

  const Json& pieces_json = get(root, origin, "pieces");
  if (!pieces_json.is_array() || pieces_json.empty())
    fail(origin + ".pieces", "expected a nonempty array");

  std::vector<Piece> bounded, unbounded;
  std::vector<VerticalMap> bounded_v, unbounded_v;
  for (size_t i = 0; i < pieces_json.size(); ++i) {
    std::string ppath = origin + ".pieces[" + std::to_string(i) + "]";
    const Json& pj = pieces_json[i];
    check_keys(pj, ppath, {"family", "domain", "map", "offset", "scale"});
    std::string family = get_string(pj, ppath, "family");
    if (family != "bounded" && family != "unbounded")
      fail(ppath + ".family", "expected \"bounded\" or \"unbounded\"");
    Interval domain = parse_interval(get(pj, ppath, "domain"), ppath + ".domain");
    Homeomorphism1D map = parse_map(get(pj, ppath, "map"), ppath + ".map", domain);
    ScalarFunction offset = parse_scalar(get(pj, ppath, "offset"), ppath + ".offset", domain);
    ScalarFunction scale = parse_scalar(get(pj, ppath, "scale"), ppath + ".scale", domain);
    VerticalMap vertical = VerticalMap::affine(std::move(offset), std::move(scale));
    if (family == "bounded") {
      bounded.push_back({domain, std::move(map)});
      bounded_v.push_back(std::move(vertical));
    } else {
      unbounded.push_back({domain, std::move(map)});
      unbounded_v.push_back(std::move(vertical));
    }
  }

  std::vector<int> permutation;
  if (root.contains("permutation")) {
    const Json& pj = root.at("permutation");
    if (!pj.is_array()) fail(origin + ".permutation", "expected an array of integers");
    for (size_t i = 0; i < pj.size(); ++i) {
      if (!pj[i].is_number_integer())
        fail(origin + ".permutation[" + std::to_string(i) + "]", "expected an integer");
      permutation.push_back(pj[i].get<int>());
    }
  }

  EvaluationSettings evaluation;
  if (root.contains("evaluation")) {
    const Json& ej = root.at("evaluation");
    std::string epath = origin + ".evaluation";
    check_keys(ej, epath, {"tol", "grid_resolution", "max_depth"});
    evaluation.tol = number_or(ej, epath, "tol", evaluation.tol);
    evaluation.grid_resolution = int_or(ej, epath, "grid_resolution", evaluation.grid_resolution);
    evaluation.max_depth = int_or(ej, epath, "max_depth", evaluation.max_depth);
    if (!(evaluation.tol > 0.0)) fail(epath + ".tol", "tolerance must be positive");
    if (evaluation.grid_resolution < 2)
      fail(epath + ".grid_resolution", "grid resolution must be >= 2");
    if (evaluation.max_depth < 1) fail(epath + ".max_depth", "depth cap must be >= 1");
  }

  AnalysisSettings analysis;
  if (root.contains("analysis")) {
    const Json& aj = root.at("analysis");
    std::string apath = origin + ".analysis";
    check_keys(aj, apath, {"p_values", "quadrature", "attractor"});
    if (aj.contains("p_values")) {
      const Json& pj = aj.at("p_values");
      if (!pj.is_array()) fail(apath + ".p_values", "expected an array");
      for (size_t i = 0; i < pj.size(); ++i) {
        std::string ipath = apath + ".p_values[" + std::to_string(i) + "]";
        if (pj[i].is_string()) {
          if (pj[i].get<std::string>() != "inf") fail(ipath, "expected a number or \"inf\"");
          analysis.p_values.push_back(std::numeric_limits<double>::infinity());
        } else if (pj[i].is_number()) {
          double p = pj[i].get<double>();
          if (!(p > 0.0)) fail(ipath, "p must be positive");
          analysis.p_values.push_back(p);
        } else {
          fail(ipath, "expected a number or \"inf\"");
        }
      }
    }
    if (aj.contains("quadrature")) {
      const Json& qj = aj.at("quadrature");
      std::string qpath = apath + ".quadrature";
      check_keys(qj, qpath, {"kind", "subdivisions"});
      if (qj.contains("kind")) {
        std::string kind = get_string(qj, qpath, "kind");
        if (kind == "midpoint")
          analysis.quadrature.kind = QuadratureKind::Midpoint;
        else if (kind == "gauss_legendre5")
          analysis.quadrature.kind = QuadratureKind::GaussLegendre5;
        else
          fail(qpath + ".kind", "unknown quadrature kind '" + kind + "'");
      }
      analysis.quadrature.subdivisions =
          int_or(qj, qpath, "subdivisions", analysis.quadrature.subdivisions);
      if (analysis.quadrature.subdivisions < 1)
        fail(qpath + ".subdivisions", "subdivisions must be >= 1");
    }
    if (aj.contains("attractor")) {
      const Json& tj = aj.at("attractor");
      std::string tpath = apath + ".attractor";
      check_keys(tj, tpath, {"window", "resolution", "iters", "stop_tol"});
      if (tj.contains("window"))
        analysis.attractor.window = parse_window(tj.at("window"), tpath + ".window");
      if (tj.contains("resolution")) {
        const Json& rj = tj.at("resolution");
        if (!rj.is_array() || rj.size() != 2 || !rj[0].is_number_integer() ||
            !rj[1].is_number_integer())
          fail(tpath + ".resolution", "expected [nx, ny]");
        analysis.attractor.nx = rj[0].get<int>();
        analysis.attractor.ny = rj[1].get<int>();
      }
      analysis.attractor.iters = int_or(tj, tpath, "iters", analysis.attractor.iters);
      analysis.attractor.stop_tol =
          number_or(tj, tpath, "stop_tol", analysis.attractor.stop_tol);
    }
  }

  try {
    PartitionScheme scheme = PartitionScheme::make(ambient, compactified, core, std::move(bounded),
                                                   std::move(unbounded), std::move(permutation));
    RBOperator op = build_rb(std::move(scheme), std::move(bounded_v), std::move(unbounded_v));
    std::string name = root.contains("name") ? get_string(root, origin, "name") : "unnamed";
    return ScenarioConfig{Scenario{std::move(name), std::move(op)}, evaluation,
                          std::move(analysis)};
  } catch (const NotContractiveError& e) {
    fail(origin, e.what());
  } catch (const StructuralError& e) {
    fail(origin, e.what());
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string dump_config(const Scenario& scenario, const EvaluationSettings& evaluation,
                        const AnalysisSettings& analysis) {
  const PartitionScheme& scheme = scenario.op.scheme();
  Json root;
  root["name"] = scenario.name;

  Json ambient;
  switch (scheme.ambient().kind()) {
    case AmbientKind::CompactInterval:
      ambient["kind"] = "compact";
      ambient["lo"] = scheme.ambient().extent().lo.value();
      ambient["hi"] = scheme.ambient().extent().hi.value();
      break;
    case AmbientKind::HalfLine: ambient["kind"] = "half_line"; break;
    case AmbientKind::RealLine: ambient["kind"] = "real_line"; break;
  }
  root["ambient"] = ambient;
  root["compactified"] = scheme.compactified();
  if (scheme.core()) root["core"] = interval_json(*scheme.core());

  Json pieces = Json::array();
  auto emit_piece = [&](const Piece& p, const VerticalMap& v, const char* family) {
    if (!v.is_affine())
      throw StructuralError("dump_config: general vertical maps are not serializable");
    Json pj;
    pj["family"] = family;
    pj["domain"] = interval_json(p.domain);
    pj["map"] = map_json(p.map);
    pj["offset"] = scalar_json(v.offset());
    pj["scale"] = scalar_json(v.scale());
    pieces.push_back(pj);
  };
  for (size_t j = 0; j < scheme.bounded().size(); ++j)
    emit_piece(scheme.bounded()[j], scenario.op.bounded_vertical()[j], "bounded");
  for (size_t i = 0; i < scheme.unbounded().size(); ++i)
    emit_piece(scheme.unbounded()[i], scenario.op.unbounded_vertical()[i], "unbounded");
  root["pieces"] = pieces;
  if (!scheme.permutation().empty()) root["permutation"] = scheme.permutation();

  Json ej;
  ej["tol"] = evaluation.tol;
  ej["grid_resolution"] = evaluation.grid_resolution;
  ej["max_depth"] = evaluation.max_depth;
  root["evaluation"] = ej;

  Json aj;
  Json pv = Json::array();
  for (double p : analysis.p_values) {
    if (std::isinf(p))
      pv.push_back("inf");
    else
      pv.push_back(p);
  }
  aj["p_values"] = pv;
  Json qj;
  qj["kind"] =
      analysis.quadrature.kind == QuadratureKind::Midpoint ? "midpoint" : "gauss_legendre5";
  qj["subdivisions"] = analysis.quadrature.subdivisions;
  aj["quadrature"] = qj;
  Json tj;
  Json wj;
  wj["ulo"] = analysis.attractor.window.ulo;
  wj["uhi"] = analysis.attractor.window.uhi;
  wj["ylo"] = analysis.attractor.window.ylo;
  wj["yhi"] = analysis.attractor.window.yhi;
  tj["window"] = wj;
  tj["resolution"] = {analysis.attractor.nx, analysis.attractor.ny};
  tj["iters"] = analysis.attractor.iters;
  tj["stop_tol"] = analysis.attractor.stop_tol;
  aj["attractor"] = tj;
  root["analysis"] = aj;

  return root.dump(2) + "\n";
}

}  // namespace fraxterp
