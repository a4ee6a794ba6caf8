#pragma once

#include <vector>

#include "fraxterp/rb_operator.hpp"

namespace fraxterp {

/// One offset function per piece, bounded family first.
struct OffsetTuple {
  std::vector<ScalarFunction> bounded_offsets;
  std::vector<ScalarFunction> unbounded_offsets;
};

/// One scale function per piece, bounded family first.  Kept fixed across a
/// basis: the offsets-to-fixed-point map is linear only for fixed scales.
struct ScaleTuple {
  std::vector<ScalarFunction> bounded_scales;
  std::vector<ScalarFunction> unbounded_scales;
};

/// Assembles the affine operator with the shared scheme and scales and the
/// given offsets.  Validation as in build_rb.
RBOperator assemble_affine(const PartitionScheme& scheme, const ScaleTuple& scales,
                           const OffsetTuple& offsets);

/**
 * The linear map from offset tuples to fixed points: theta(p,q) is the unique
 * fixed point of the affine operator built from (scheme, scales, offsets).
 * Linear in the offsets for fixed scales, and injective: a nonzero offset
 * leaves a nonzero trace on the fixed point at the offset's argmax.
 */
FractalFunction theta(const PartitionScheme& scheme, const ScaleTuple& scales,
                      const OffsetTuple& offsets, double tol);

/// Coefficients (ascending powers) of the Lagrange polynomial through the
/// given nodes that is 1 at nodes[kappa] and 0 at the others.
std::vector<double> lagrange_coefficients(const std::vector<double>& nodes, size_t kappa);

/// Per-piece interpolation nodes, bounded family first.
struct NodeSpec {
  std::vector<std::vector<double>> bounded;
  std::vector<std::vector<double>> unbounded;
};

/**
 * The span of fixed points whose offsets are polynomials of the declared
 * orders: one basis element per node, each the fixed point of the Lagrange
 * polynomial offset on its piece and zero offsets elsewhere.  dimension is
 * the sum of the orders; elements are ordered piece by piece (bounded family
 * first), nodes in the given order.
 */
struct BasisSet {
  PartitionScheme scheme;
  ScaleTuple scales;
  NodeSpec nodes;
  std::vector<FractalFunction> elements;
  int dimension = 0;
};

/// Builds the fractal Lagrange basis.  Node counts must equal the declared
/// orders and nodes must be distinct within each piece and lie in the piece
/// domain.
BasisSet lagrange_basis(const PartitionScheme& scheme, const ScaleTuple& scales,
                        const std::vector<int>& bounded_orders,
                        const std::vector<int>& unbounded_orders, const NodeSpec& nodes,
                        double tol);

/// Weights lining up with basis.elements for reproducing theta(offsets):
/// each offset evaluated at its piece's nodes.
std::vector<double> reconstruction_weights(const BasisSet& basis, const OffsetTuple& offsets);

/// A separable bivariate function: value(x, xt) = left(x) * right(xt).
struct TensorFunction {
  FractalFunction left;
  FractalFunction right;
};

TensorFunction tensor(FractalFunction left, FractalFunction right);

/// The product of the two certified factor evaluations; the error is at most
/// tol * (|left| + |right| + tol).
double evaluate_tensor(const TensorFunction& t, const ExtendedPoint& x, const ExtendedPoint& xt,
                       double tol);

/// Ratios of successive sup increments of the grid iterations combined as a
/// tensor: element k-1 compares sup |f_{k+1} g_{k+1} - f_k g_k| on a probe
/// grid against the previous increment.  The tail approaches the larger of
/// the two contraction factors.
std::vector<double> tensor_iteration_ratios(const RBOperator& a, const RBOperator& b,
                                            int grid_cells, int iters);

}  // namespace fraxterp
