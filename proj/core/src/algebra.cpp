#include "fraxterp/algebra.hpp"

#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

namespace {

void check_tuple_sizes(const PartitionScheme& scheme, size_t nb, size_t nu,
                       const std::string& what) {
  if (nb != scheme.bounded().size() || nu != scheme.unbounded().size()) {
    std::ostringstream oss;
    oss << what << ": got " << nb << "+" << nu << " entries for a scheme with "
        << scheme.bounded().size() << "+" << scheme.unbounded().size() << " pieces";
    throw StructuralError(oss.str());
  }
}

}  // namespace

RBOperator assemble_affine(const PartitionScheme& scheme, const ScaleTuple& scales,
                           const OffsetTuple& offsets) {
  check_tuple_sizes(scheme, scales.bounded_scales.size(), scales.unbounded_scales.size(),
                    "assemble_affine scales");
  check_tuple_sizes(scheme, offsets.bounded_offsets.size(), offsets.unbounded_offsets.size(),
                    "assemble_affine offsets");
  std::vector<VerticalMap> bounded, unbounded;
  for (size_t i = 0; i < offsets.bounded_offsets.size(); ++i)
    bounded.push_back(VerticalMap::affine(offsets.bounded_offsets[i], scales.bounded_scales[i]));
  for (size_t i = 0; i < offsets.unbounded_offsets.size(); ++i)
    unbounded.push_back(
        VerticalMap::affine(offsets.unbounded_offsets[i], scales.unbounded_scales[i]));
  return build_rb(scheme, std::move(bounded), std::move(unbounded));
}

FractalFunction theta(const PartitionScheme& scheme, const ScaleTuple& scales,
                      const OffsetTuple& offsets, double tol) {
  return FractalFunction(assemble_affine(scheme, scales, offsets), tol);
}

std::vector<double> lagrange_coefficients(const std::vector<double>& nodes, size_t kappa) {
  if (kappa >= nodes.size())
    throw StructuralError("lagrange_coefficients: node index out of range");
  std::vector<double> coeffs{1.0};
  for (size_t l = 0; l < nodes.size(); ++l) {
    if (l == kappa) continue;
    double denom = nodes[kappa] - nodes[l];
    if (denom == 0.0) throw StructuralError("lagrange_coefficients: duplicate nodes");
    // Multiply by (x - nodes[l]) / denom.
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k] / denom;
      next[k] -= coeffs[k] * nodes[l] / denom;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

BasisSet lagrange_basis(const PartitionScheme& scheme, const ScaleTuple& scales,
                        const std::vector<int>& bounded_orders,
                        const std::vector<int>& unbounded_orders, const NodeSpec& nodes,
                        double tol) {
  check_tuple_sizes(scheme, bounded_orders.size(), unbounded_orders.size(),
                    "lagrange_basis orders");
  check_tuple_sizes(scheme, nodes.bounded.size(), nodes.unbounded.size(), "lagrange_basis nodes");
  check_tuple_sizes(scheme, scales.bounded_scales.size(), scales.unbounded_scales.size(),
                    "lagrange_basis scales");

  auto check_nodes = [&](const std::vector<double>& xs, int order, const Piece& piece,
                         const std::string& label) {
    if (static_cast<int>(xs.size()) != order) {
      std::ostringstream oss;
      oss << "lagrange_basis: " << label << " declares order " << order << " but has "
          << xs.size() << " nodes";
      throw StructuralError(oss.str());
    }
    if (order < 1) throw StructuralError("lagrange_basis: " + label + ": order must be >= 1");
    for (size_t a = 0; a < xs.size(); ++a) {
      if (!piece.domain.closure_contains(ExtendedPoint::finite(xs[a])))
        throw StructuralError("lagrange_basis: " + label + ": node outside the piece domain");
      for (size_t b = a + 1; b < xs.size(); ++b)
        if (xs[a] == xs[b])
          throw StructuralError("lagrange_basis: " + label + ": duplicate nodes");
    }
  };
  for (size_t j = 0; j < nodes.bounded.size(); ++j) {
    std::ostringstream l;
    l << "bounded piece " << j + 1;
    check_nodes(nodes.bounded[j], bounded_orders[j], scheme.bounded()[j], l.str());
  }
  for (size_t i = 0; i < nodes.unbounded.size(); ++i) {
    std::ostringstream l;
    l << "unbounded piece " << i + 1;
    check_nodes(nodes.unbounded[i], unbounded_orders[i], scheme.unbounded()[i], l.str());
  }

  auto zero_offsets = [&]() {
    OffsetTuple zero;
    for (const Piece& p : scheme.bounded())
      zero.bounded_offsets.push_back(ScalarFunction::constant(0.0, p.domain));
    for (const Piece& p : scheme.unbounded())
      zero.unbounded_offsets.push_back(ScalarFunction::constant(0.0, p.domain));
    return zero;
  };

  BasisSet basis{scheme, scales, nodes, {}, 0};
  for (int o : bounded_orders) basis.dimension += o;
  for (int o : unbounded_orders) basis.dimension += o;

  auto emit = [&](bool is_bounded, size_t piece_idx, const std::vector<double>& xs) {
    const Piece& piece =
        is_bounded ? scheme.bounded()[piece_idx] : scheme.unbounded()[piece_idx];
    for (size_t kappa = 0; kappa < xs.size(); ++kappa) {
      OffsetTuple offsets = zero_offsets();
      ScalarFunction poly =
          ScalarFunction::polynomial(lagrange_coefficients(xs, kappa), piece.domain);
      if (is_bounded)
        offsets.bounded_offsets[piece_idx] = poly;
      else
        offsets.unbounded_offsets[piece_idx] = poly;
      basis.elements.push_back(theta(scheme, scales, offsets, tol));
    }
  };
  for (size_t j = 0; j < nodes.bounded.size(); ++j) emit(true, j, nodes.bounded[j]);
  for (size_t i = 0; i < nodes.unbounded.size(); ++i) emit(false, i, nodes.unbounded[i]);
  return basis;
}

std::vector<double> reconstruction_weights(const BasisSet& basis, const OffsetTuple& offsets) {
  check_tuple_sizes(basis.scheme, offsets.bounded_offsets.size(),
                    offsets.unbounded_offsets.size(), "reconstruction_weights offsets");
  std::vector<double> w;
  for (size_t j = 0; j < basis.nodes.bounded.size(); ++j)
    for (double x : basis.nodes.bounded[j])
      w.push_back(offsets.bounded_offsets[j](ExtendedPoint::finite(x)));
  for (size_t i = 0; i < basis.nodes.unbounded.size(); ++i)
    for (double x : basis.nodes.unbounded[i])
      w.push_back(offsets.unbounded_offsets[i](ExtendedPoint::finite(x)));
  return w;
}

TensorFunction tensor(FractalFunction left, FractalFunction right) {
  return {std::move(left), std::move(right)};
}

double evaluate_tensor(const TensorFunction& t, const ExtendedPoint& x, const ExtendedPoint& xt,
                       double tol) {
  return evaluate(t.left, x, tol) * evaluate(t.right, xt, tol);
}

std::vector<double> tensor_iteration_ratios(const RBOperator& a, const RBOperator& b,
                                            int grid_cells, int iters) {
  if (iters < 2) throw StructuralError("tensor_iteration_ratios: needs at least 2 iterations");
  GridFunction fa(a.scheme().ambient(), grid_cells), fb(b.scheme().ambient(), grid_cells);
  auto tensor_sup_diff = [&](const GridFunction& a1, const GridFunction& b1,
                             const GridFunction& a0, const GridFunction& b0) {
    double best = 0.0;
    for (int i = 0; i < a1.size(); ++i)
      for (int j = 0; j < b1.size(); ++j)
        best = std::max(best, std::fabs(a1[i] * b1[j] - a0[i] * b0[j]));
    return best;
  };
  GridFunction na = apply_rb(a, fa), nb = apply_rb(b, fb);
  double prev_diff = tensor_sup_diff(na, nb, fa, fb);
  std::vector<double> ratios;
  for (int k = 1; k < iters; ++k) {
    GridFunction ma = apply_rb(a, na), mb = apply_rb(b, nb);
    double diff = tensor_sup_diff(ma, mb, na, nb);
    ratios.push_back(prev_diff > 0.0 ? diff / prev_diff : 0.0);
    fa = std::move(na);
    fb = std::move(nb);
    na = std::move(ma);
    nb = std::move(mb);
    prev_diff = diff;
  }
  return ratios;
}

}  // namespace fraxterp
