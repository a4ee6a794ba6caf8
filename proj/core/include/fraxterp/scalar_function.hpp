#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraxterp/interval.hpp"
#include "fraxterp/maps.hpp"

namespace fraxterp {

enum class ScalarKind { Constant, Polynomial, Hat, Piecewise, RationalTail, Composed, Callable };

/**
 * A bounded real-valued function on an interval of the extended line.
 *
 * Evaluation at an end marker returns the recorded limit (constants, decaying
 * tails, clamped hats) and throws DomainError when no finite limit exists.
 * sup_abs() is a probed bound with extra refinement around breakpoints, which
 * for the piecewise-smooth catalog members lands on the true supremum.
 */
class ScalarFunction {
 public:
  static ScalarFunction constant(double c, const Interval& domain);
  /// coeffs[k] multiplies x^k.
  static ScalarFunction polynomial(std::vector<double> coeffs, const Interval& domain);
  /// x -> max(height - |x - center|, 0)
  static ScalarFunction hat(double height, double center, const Interval& domain);
  /// Sub-rules between consecutive breakpoints; parts.size() == breaks.size() + 1.
  static ScalarFunction piecewise(std::vector<double> breaks, std::vector<ScalarFunction> parts,
                                  const Interval& domain);
  /// x -> numerator / x; the domain must not reach 0.
  static ScalarFunction rational_tail(double numerator, const Interval& domain);
  /// outer(map(x)) on map's domain.
  static ScalarFunction composed(ScalarFunction outer, Homeomorphism1D map);
  /// Arbitrary rule, used when a function is defined by another computation.
  /// Limits at end markers may be supplied; breakpoint hints help sup probing.
  static ScalarFunction callable(std::function<double(double)> fn, const Interval& domain,
                                 std::optional<double> limit_at_minus_inf = std::nullopt,
                                 std::optional<double> limit_at_plus_inf = std::nullopt,
                                 std::vector<double> breakpoint_hints = {});

  double eval(const ExtendedPoint& x) const;
  double operator()(const ExtendedPoint& x) const { return eval(x); }
  double operator()(double x) const { return eval(ExtendedPoint::finite(x)); }

  const Interval& domain() const { return domain_; }
  ScalarKind kind() const { return kind_; }

  /// Finite interior points where the rule changes or kinks.
  std::vector<double> breakpoints() const;

  /// Probed bound on |f| over the domain (10x refinement near breakpoints).
  double sup_abs(int base_probes = 1024) const;

  std::optional<double> end_limit(const ExtendedPoint& marker) const;

  /// True when the function takes the same value on both sides of every
  /// internal breakpoint (within tol).  Non-piecewise kinds are continuous.
  bool is_continuous_at_breaks(double tol = 1e-9) const;

  // Introspection for serialization.
  const std::vector<double>& coefficients() const { return coeffs_; }
  double param_a() const { return pa_; }
  double param_b() const { return pb_; }
  const std::vector<double>& piece_breaks() const { return breaks_; }
  const std::vector<ScalarFunction>& piece_parts() const { return parts_; }
  const ScalarFunction* composed_outer() const { return outer_.get(); }
  const Homeomorphism1D* composed_map() const { return map_.get(); }

 private:
  ScalarFunction() = default;
  double eval_finite(double x) const;

  ScalarKind kind_ = ScalarKind::Constant;
  Interval domain_ = Interval::closed(0.0, 1.0);
  std::vector<double> coeffs_;                // Polynomial
  double pa_ = 0.0, pb_ = 0.0;                // Constant c / Hat (h,c) / RationalTail (a,-)
  std::vector<double> breaks_;                // Piecewise
  std::vector<ScalarFunction> parts_;         // Piecewise
  std::shared_ptr<ScalarFunction> outer_;     // Composed
  std::shared_ptr<Homeomorphism1D> map_;      // Composed
  std::function<double(double)> fn_;          // Callable
  std::optional<double> limit_lo_, limit_hi_;
  std::vector<double> hints_;
};

}  // namespace fraxterp
