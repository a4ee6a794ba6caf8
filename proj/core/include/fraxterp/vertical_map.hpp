#pragma once

#include <functional>
#include <optional>

#include "fraxterp/scalar_function.hpp"

namespace fraxterp {

/**
 * The vertical part of one piece of a Read-Bajraktarevic operator: a rule
 * (xi, y) -> value on piece_domain x R, uniformly Lipschitz in y.
 *
 * The affine form offset(xi) + scale(xi) * y is the workhorse; a general rule
 * carries an explicit Lipschitz constant which is spot-checked on probe
 * triples at construction (1e-12 slack).
 */
class VerticalMap {
 public:
  static VerticalMap affine(ScalarFunction offset, ScalarFunction scale);
  static VerticalMap general(std::function<double(double, double)> rule, double lip_y,
                             const Interval& piece_domain, int probes = 64);

  double apply(const ExtendedPoint& xi, double y) const;

  /// Lipschitz bound in y: probed sup |scale| for affine maps, the declared
  /// constant otherwise.
  double lip_y() const { return lip_; }

  /// Contraction factor of one descent step at xi (tighter than lip_y for
  /// affine maps with varying scale).
  double step_factor(const ExtendedPoint& xi) const;

  /// sup |rule(., 0)| over the piece: the offset part's contribution.
  double offset_sup() const { return offset_sup_; }

  bool is_affine() const { return affine_; }
  const ScalarFunction& offset() const;
  const ScalarFunction& scale() const;
  const Interval& piece_domain() const { return piece_domain_; }

 private:
  VerticalMap() = default;
  bool affine_ = true;
  std::optional<ScalarFunction> offset_, scale_;
  std::function<double(double, double)> rule_;
  Interval piece_domain_ = Interval::closed(0.0, 1.0);
  double lip_ = 0.0;
  double offset_sup_ = 0.0;
};

}  // namespace fraxterp
