#pragma once

#include <string>
#include <vector>

#include "fraxterp/rb_operator.hpp"

namespace fraxterp {

enum class QuadratureKind { Midpoint, GaussLegendre5 };

/**
 * Composite quadrature over a piece: the piece is split at the integrand's
 * breakpoints, each segment gets a share of the subdivisions, and unbounded
 * segments are first substituted to [0,1) with the substitution's Jacobian.
 */
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::GaussLegendre5;
  int subdivisions = 256;
};

/// Plain definite integral of fn over [a,b] (finite), no breakpoint logic.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 const QuadratureRule& rule);

/// sup |D(map^-1)| over a subinterval of the image, or unbounded when probes
/// past 1e12 keep growing under endpoint refinement.
struct JacobianBound {
  bool unbounded = false;
  double value = 0.0;
};

JacobianBound jacobian_bound(const Homeomorphism1D& map, const Interval& piece);

/// (integral of |f|^p over the piece)^(1/p); the probed sup for p = inf.
double lp_norm(const ScalarFunction& f, const Interval& piece, double p,
               const QuadratureRule& rule);

enum class LpRegime { SubOne, OneToInf, Infinity };

/**
 * The contractivity criterion per regime:
 *   p in (0,1):  sum of J * |s|_p^p            (the metric d_p case)
 *   p in [1,oo): the same sum to the power 1/p
 *   p = oo:      max bounded-family sup + max unbounded-family sup
 * passes means criterion_value < 1.  Unbounded Jacobians void the two
 * integral regimes (the change of variables needs J < oo); the sup regime
 * does not involve J.
 */
struct LpReport {
  double p = 2.0;
  LpRegime regime = LpRegime::OneToInf;
  std::vector<JacobianBound> jacobians;  // bounded family first, then unbounded
  std::vector<double> scale_norms;       // same order; empty when voided
  double criterion_value = 0.0;
  bool passes = false;
  std::string reason;
  double sup_norm_factor = 0.0;  // max over all pieces of sup |scale|
};

LpReport lp_contractivity(const RBOperator& op, double p, const QuadratureRule& rule);

}  // namespace fraxterp
