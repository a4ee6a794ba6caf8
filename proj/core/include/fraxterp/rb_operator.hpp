#pragma once

#include <memory>
#include <vector>

#include "fraxterp/partition.hpp"
#include "fraxterp/vertical_map.hpp"

namespace fraxterp {

/**
 * A Read-Bajraktarevic operator: on each piece image the value of Phi(f) is
 * the piece's vertical map applied to (xi, f(xi)), where xi is the preimage
 * of x under the piece map.  The fixed point satisfies, for every piece,
 *
 *     f(map(xi)) = vertical(xi, f(xi))        for xi in the piece domain.
 *
 * build_rb rejects operators whose vertical family is not a uniform
 * contraction in the sup norm.
 */
class RBOperator {
 public:
  const PartitionScheme& scheme() const { return *scheme_; }
  const VerticalMap& vertical(const PieceId& id) const;
  const std::vector<VerticalMap>& bounded_vertical() const { return bounded_v_; }
  const std::vector<VerticalMap>& unbounded_vertical() const { return unbounded_v_; }

  /// Uniform contraction factor: max over pieces of the vertical Lipschitz
  /// bounds in y.
  double contraction() const { return contraction_; }

  /// sup |Phi(0)|: the largest offset contribution across pieces.
  double base_sup() const { return base_sup_; }

  /// A bound on |fixed point|: base_sup / (1 - contraction).
  double value_bound() const;

  friend RBOperator build_rb(PartitionScheme scheme, std::vector<VerticalMap> bounded,
                             std::vector<VerticalMap> unbounded);

 private:
  RBOperator() = default;
  std::shared_ptr<const PartitionScheme> scheme_;
  std::vector<VerticalMap> bounded_v_, unbounded_v_;
  double contraction_ = 0.0;
  double base_sup_ = 0.0;
};

RBOperator build_rb(PartitionScheme scheme, std::vector<VerticalMap> bounded,
                    std::vector<VerticalMap> unbounded);

/**
 * Samples of a function on a grid uniform in unit coordinates (cells + 1
 * points including both ends of the ambient domain).
 */
class GridFunction {
 public:
  GridFunction(const Ambient& ambient, int cells, double fill = 0.0);

  int cells() const { return cells_; }
  int size() const { return cells_ + 1; }
  double unit_at(int i) const;
  ExtendedPoint point(int i) const;
  double& operator[](int i) { return values_[i]; }
  double operator[](int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const Ambient& ambient() const { return ambient_; }

  /// Linear interpolation in unit coordinates.
  double interpolate_unit(double u) const;
  double interpolate(const ExtendedPoint& x) const;

  double sup_abs() const;

 private:
  Ambient ambient_;
  int cells_;
  std::vector<double> values_;
};

double sup_diff(const GridFunction& a, const GridFunction& b);

/// One application of the operator to a grid function (new grid, same size).
GridFunction apply_rb(const RBOperator& op, const GridFunction& f);

/**
 * The attractor of an RB operator.  evaluate() walks the self-referential
 * expansion down the preimage path until the accumulated contraction
 * certifies the requested tolerance; the grid payload (when present) is the
 * final iterate of the grid recursion, kept for plotting and diagnostics.
 */
class FractalFunction {
 public:
  FractalFunction(RBOperator op, double default_tol = 1e-9, int max_depth = 256);

  const RBOperator& op() const { return *op_; }
  double value_bound() const { return op_->value_bound(); }
  double default_tol() const { return default_tol_; }
  int max_depth() const { return max_depth_; }

  bool has_grid() const { return grid_ != nullptr; }
  const GridFunction& grid() const;
  double grid_residual() const { return grid_residual_; }
  int iterations() const { return iterations_; }

  void attach_grid(GridFunction g, double residual, int iterations);

 private:
  std::shared_ptr<const RBOperator> op_;
  double default_tol_;
  int max_depth_;
  std::shared_ptr<const GridFunction> grid_;
  double grid_residual_ = -1.0;
  int iterations_ = 0;
};

/// Iterations needed so that contraction^k / (1 - contraction) * base_sup
/// falls below tol.
int predicted_iterations(const RBOperator& op, double tol);

/// Grid fixed-point: iterates apply_rb from zero for the predicted count,
/// records the achieved grid residual, and returns a function that also
/// supports certified pointwise evaluation.
FractalFunction fixed_point(const RBOperator& op, double tol, int grid_cells);

/// Certified pointwise evaluation: |result - f(x)| <= tol.
double evaluate(const FractalFunction& f, const ExtendedPoint& x, double tol);

/// Evaluation forcing the first expansion step through a chosen piece; x must
/// lie in the closure of that piece's image.  Used for boundary consistency.
double evaluate_via_piece(const FractalFunction& f, const PieceId& id, const ExtendedPoint& x,
                          double tol);

/// sup |Phi(f) - f| over a probe grid, both sides through evaluate().
double residual(const RBOperator& op, const FractalFunction& f, int probes);

/// Ratios of successive sup-norm increments of the grid iteration started
/// from zero: element k-1 is d(f_{k+1}, f_k) / d(f_k, f_{k-1}).  The tail of
/// the sequence approaches the operator's contraction factor.
std::vector<double> iteration_ratios(const RBOperator& op, int grid_cells, int iters);

}  // namespace fraxterp
