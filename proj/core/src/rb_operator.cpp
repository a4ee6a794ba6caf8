#include "fraxterp/rb_operator.hpp"

#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"
#include "fraxterp/parallel.hpp"

namespace fraxterp {

RBOperator build_rb(PartitionScheme scheme, std::vector<VerticalMap> bounded,
                    std::vector<VerticalMap> unbounded) {
  if (bounded.size() != scheme.bounded().size() || unbounded.size() != scheme.unbounded().size())
    throw StructuralError("build_rb: one vertical map per piece");

  ValidationReport vr = validate_partition(scheme, 64);
  if (!vr.ok) {
    std::ostringstream oss;
    oss << "build_rb: scheme fails validation: " << vr.violations.front().condition << " ("
        << vr.violations.front().description << ")";
    throw StructuralError(oss.str());
  }

  auto check_domains = [&](const std::vector<VerticalMap>& vm, const std::vector<Piece>& pieces,
                           PieceKind kind) {
    for (size_t i = 0; i < vm.size(); ++i) {
      if (!(vm[i].piece_domain() == pieces[i].domain)) {
        PieceId id{kind, static_cast<int>(i) + 1};
        throw StructuralError("build_rb: vertical map of " + id.str() +
                              " disagrees with the piece domain");
      }
    }
  };
  check_domains(bounded, scheme.bounded(), PieceKind::Bounded);
  check_domains(unbounded, scheme.unbounded(), PieceKind::Unbounded);

  double contraction = 0.0;
  std::string worst = "";
  auto track = [&](const std::vector<VerticalMap>& vm, PieceKind kind) {
    for (size_t i = 0; i < vm.size(); ++i) {
      if (vm[i].lip_y() >= contraction) {
        contraction = vm[i].lip_y();
        worst = PieceId{kind, static_cast<int>(i) + 1}.str();
      }
    }
  };
  track(bounded, PieceKind::Bounded);
  track(unbounded, PieceKind::Unbounded);
  if (contraction >= 1.0) {
    std::ostringstream oss;
    oss << "build_rb: not contractive: " << worst << " has vertical Lipschitz bound "
        << contraction;
    throw NotContractiveError(oss.str(), worst, contraction);
  }

  double base = 0.0;
  for (const VerticalMap& v : bounded) base = std::max(base, v.offset_sup());
  for (const VerticalMap& v : unbounded) base = std::max(base, v.offset_sup());

  RBOperator op;
  op.scheme_ = std::make_shared<PartitionScheme>(std::move(scheme));
  op.bounded_v_ = std::move(bounded);
  op.unbounded_v_ = std::move(unbounded);
  op.contraction_ = contraction;
  op.base_sup_ = base;
  return op;
}

const VerticalMap& RBOperator::vertical(const PieceId& id) const {
  const auto& family = id.kind == PieceKind::Bounded ? bounded_v_ : unbounded_v_;
  if (id.index < 1 || id.index > static_cast<int>(family.size()))
    throw StructuralError("RBOperator: no vertical map for " + id.str());
  return family[id.index - 1];
}

double RBOperator::value_bound() const {
  if (contraction_ >= 1.0) throw StructuralError("value_bound: operator not contractive");
  return base_sup_ / (1.0 - contraction_);
}

GridFunction::GridFunction(const Ambient& ambient, int cells, double fill)
    : ambient_(ambient), cells_(cells), values_(static_cast<size_t>(cells) + 1, fill) {
  if (cells < 1) throw StructuralError("GridFunction: needs at least one cell");
}

double GridFunction::unit_at(int i) const {
  return ambient_.unit_lo() + ambient_.unit_span() * i / cells_;
}

ExtendedPoint GridFunction::point(int i) const { return ambient_.from_unit(unit_at(i)); }

double GridFunction::interpolate_unit(double u) const {
  double lo = ambient_.unit_lo();
  double t = (u - lo) / ambient_.unit_span() * cells_;
  if (t <= 0.0) return values_.front();
  if (t >= cells_) return values_.back();
  int i = static_cast<int>(t);
  double frac = t - i;
  return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double GridFunction::interpolate(const ExtendedPoint& x) const {
  return interpolate_unit(ambient_.to_unit(x));
}

double GridFunction::sup_abs() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::fabs(v));
  return best;
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw StructuralError("sup_diff: grid sizes differ");
  double best = 0.0;
  for (int i = 0; i < a.size(); ++i) best = std::max(best, std::fabs(a[i] - b[i]));
  return best;
}

GridFunction apply_rb(const RBOperator& op, const GridFunction& f) {
  if (!(f.ambient() == op.scheme().ambient()))
    throw StructuralError("apply_rb: grid ambient differs from the operator's");
  GridFunction out(f.ambient(), f.cells());
  const PartitionScheme& scheme = op.scheme();
  parallel_for(f.size(), [&](int i) {
    ExtendedPoint x = f.point(i);
    PieceId id = locate(scheme, x);
    const Piece& piece = scheme.piece(id);
    ExtendedPoint xi = piece.map.inverse(x);
    out[i] = op.vertical(id).apply(xi, f.interpolate(xi));
  });
  return out;
}

FractalFunction::FractalFunction(RBOperator op, double default_tol, int max_depth)
    : op_(std::make_shared<RBOperator>(std::move(op))),
      default_tol_(default_tol),
      max_depth_(max_depth) {
  if (!(default_tol > 0.0)) throw StructuralError("FractalFunction: tolerance must be positive");
  if (max_depth < 1) throw StructuralError("FractalFunction: depth cap must be positive");
}

const GridFunction& FractalFunction::grid() const {
  if (!grid_) throw StructuralError("FractalFunction: no grid iterate attached");
  return *grid_;
}

void FractalFunction::attach_grid(GridFunction g, double residual, int iterations) {
  grid_ = std::make_shared<GridFunction>(std::move(g));
  grid_residual_ = residual;
  iterations_ = iterations;
}

int predicted_iterations(const RBOperator& op, double tol) {
  if (!(tol > 0.0)) throw StructuralError("predicted_iterations: tolerance must be positive");
  double r0 = op.base_sup();
  double l = op.contraction();
  if (r0 <= tol * (1.0 - l) || l == 0.0) return 1;
  double k = std::ceil(std::log(tol * (1.0 - l) / r0) / std::log(l));
  return k < 1.0 ? 1 : static_cast<int>(k);
}

FractalFunction fixed_point(const RBOperator& op, double tol, int grid_cells) {
  int k = predicted_iterations(op, tol);
  GridFunction g(op.scheme().ambient(), grid_cells);
  for (int i = 0; i < k; ++i) g = apply_rb(op, g);
  double res = sup_diff(apply_rb(op, g), g);
  FractalFunction f(op, tol);
  f.attach_grid(std::move(g), res, k);
  return f;
}

namespace {

struct PathStep {
  const VerticalMap* v;
  ExtendedPoint xi;
};

// Walks the preimage path until the accumulated contraction certifies tol.
// Returns the backward-substituted value; sets achieved bound.
double expand_path(const FractalFunction& f, const ExtendedPoint& start, double tol,
                   std::vector<PathStep>& path, double& bound) {
  const RBOperator& op = f.op();
  const PartitionScheme& scheme = op.scheme();
  double product = 1.0;
  ExtendedPoint cur = start;
  bool certified = false;
  for (int depth = static_cast<int>(path.size()); depth < f.max_depth(); ++depth) {
    if (product * f.value_bound() <= tol) {
      certified = true;
      break;
    }
    PieceId id = locate(scheme, cur);
    const Piece& piece = scheme.piece(id);
    ExtendedPoint xi = piece.map.inverse(cur);
    const VerticalMap& v = op.vertical(id);
    path.push_back({&v, xi});
    product *= v.step_factor(xi);
    cur = xi;
  }
  if (!certified) certified = product * f.value_bound() <= tol;
  double y = 0.0;
  for (size_t i = path.size(); i-- > 0;) y = path[i].v->apply(path[i].xi, y);
  bound = product * f.value_bound();
  if (!certified) {
    std::ostringstream oss;
    oss << "evaluate: depth cap " << f.max_depth() << " reached with error bound " << bound
        << " > tol " << tol;
    throw DepthExceededError(oss.str(), y, bound);
  }
  return y;
}

}  // namespace

double evaluate(const FractalFunction& f, const ExtendedPoint& x, double tol) {
  if (!(tol > 0.0)) throw StructuralError("evaluate: tolerance must be positive");
  std::vector<PathStep> path;
  path.reserve(64);
  double bound = 0.0;
  return expand_path(f, x, tol, path, bound);
}

double evaluate_via_piece(const FractalFunction& f, const PieceId& id, const ExtendedPoint& x,
                          double tol) {
  const Piece& piece = f.op().scheme().piece(id);
  if (!piece.image().closure_contains(x)) {
    std::ostringstream oss;
    oss << "evaluate_via_piece: " << x << " outside the closure of " << id.str() << " image "
        << piece.image().str();
    throw DomainError(oss.str());
  }
  ExtendedPoint xi = piece.map.inverse(x);
  double inner = evaluate(f, xi, tol);
  return f.op().vertical(id).apply(xi, inner);
}

std::vector<double> iteration_ratios(const RBOperator& op, int grid_cells, int iters) {
  if (iters < 2) throw StructuralError("iteration_ratios: needs at least 2 iterations");
  GridFunction prev(op.scheme().ambient(), grid_cells);
  GridFunction cur = apply_rb(op, prev);
  double prev_diff = sup_diff(cur, prev);
  std::vector<double> ratios;
  for (int k = 1; k < iters; ++k) {
    GridFunction next = apply_rb(op, cur);
    double diff = sup_diff(next, cur);
    ratios.push_back(prev_diff > 0.0 ? diff / prev_diff : 0.0);
    prev = std::move(cur);
    cur = std::move(next);
    prev_diff = diff;
  }
  return ratios;
}

double residual(const RBOperator& op, const FractalFunction& f, int probes) {
  if (probes < 2) throw StructuralError("residual: needs at least 2 probes");
  const Ambient& amb = op.scheme().ambient();
  double tol = f.default_tol();
  double worst = 0.0;
  for (int i = 0; i <= probes; ++i) {
    double u = amb.unit_lo() + amb.unit_span() * i / probes;
    ExtendedPoint x = amb.from_unit(u);
    PieceId id = locate(op.scheme(), x);
    const Piece& piece = op.scheme().piece(id);
    ExtendedPoint xi = piece.map.inverse(x);
    double phi = op.vertical(id).apply(xi, evaluate(f, xi, tol));
    double fx = evaluate(f, x, tol);
    worst = std::max(worst, std::fabs(phi - fx));
  }
  return worst;
}

}  // namespace fraxterp
