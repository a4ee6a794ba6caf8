#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fraxterp/interval.hpp"

namespace fraxterp {

enum class MapKind { Affine, Mobius, AtanScaled, TanScaled, Translation, Composition };

enum class Direction { Forward, Inverse };

/**
 * A monotone homeomorphism between two intervals of the extended line.
 *
 * The catalog is closed under inversion and composition.  End markers are
 * never pushed through IEEE arithmetic: an endpoint of the domain maps to the
 * corresponding endpoint of the codomain by orientation, and singular finite
 * endpoints (a Moebius pole or tan(pi/2) sitting exactly on the boundary) are
 * resolved the same way.  The codomain is computed at construction.
 */
class Homeomorphism1D {
 public:
  static Homeomorphism1D affine(double a, double b, const Interval& domain);
  static Homeomorphism1D mobius(double a, double b, double c, double d, const Interval& domain);
  static Homeomorphism1D atan_scaled(const Interval& domain);  // x -> (2/pi) atan x
  static Homeomorphism1D tan_scaled(const Interval& domain);   // x -> tan(pi x / 2)
  static Homeomorphism1D translation(double t, const Interval& domain);
  static Homeomorphism1D compose(const Homeomorphism1D& outer, const Homeomorphism1D& inner);

  ExtendedPoint forward(const ExtendedPoint& x) const;
  ExtendedPoint inverse(const ExtendedPoint& y) const;

  /// d/dx of the forward rule at a finite interior point.
  double derivative(double x) const;

  /// The same homeomorphism with domain and codomain swapped.
  Homeomorphism1D inverted() const;

  /// The same rule on a subinterval of the domain (codomain recomputed).
  Homeomorphism1D restricted(const Interval& subdomain) const;

  const Interval& domain() const { return domain_; }
  const Interval& codomain() const { return codomain_; }
  bool increasing() const { return increasing_; }

  MapKind kind() const { return kind_; }
  /// Rule parameters: Affine {a,b}, Mobius {a,b,c,d}, Translation {t}, else empty.
  const std::vector<double>& params() const { return params_; }
  /// Composition factors (outer, inner); null for elementary kinds.
  const Homeomorphism1D* outer() const { return outer_.get(); }
  const Homeomorphism1D* inner() const { return inner_.get(); }

  std::string describe() const;

 private:
  Homeomorphism1D() = default;

  double rule_forward(double x) const;
  double rule_inverse(double y) const;
  bool forward_singular_at(double x) const;
  bool inverse_singular_at(double y) const;
  void finish_construction();  // orientation + codomain

  MapKind kind_ = MapKind::Affine;
  std::vector<double> params_;
  std::shared_ptr<const Homeomorphism1D> outer_;
  std::shared_ptr<const Homeomorphism1D> inner_;
  Interval domain_;
  Interval codomain_;
  bool increasing_ = true;
};

ExtendedPoint apply(const Homeomorphism1D& map, Direction dir, const ExtendedPoint& x);

struct MapCheck {
  std::string condition;
  bool ok = true;
  std::string detail;
};

struct MapReport {
  bool ok = true;
  std::vector<MapCheck> checks;
};

/// Probes monotonicity, round-trip accuracy, and endpoint correspondence.
/// Failures are reported, not thrown.
MapReport verify_homeomorphism(const Homeomorphism1D& map, int probes);

}  // namespace fraxterp
