#pragma once

#include <memory>
#include <optional>
#include <string>

#include "fraxterp/rb_operator.hpp"

namespace fraxterp {

enum class Provenance { Direct, Pullback };

/**
 * A named ready-to-run operator together with how it was obtained.  Pullback
 * scenarios keep the source operator and the compactifying homeomorphism so
 * the transport identity (fixed point = source fixed point composed with j)
 * stays checkable.
 */
struct Scenario {
  std::string name;
  RBOperator op;
  Provenance provenance = Provenance::Direct;
  std::shared_ptr<const RBOperator> source;  // pullback only
  std::optional<Homeomorphism1D> j;          // pullback only
  std::string notes;
};

/// Two dyadic affine pieces on [0,1] (x/2 and (x+1)/2) with the tent offset
/// g(x) = max(1/2 - |x - 1/2|, 0) precomposed with each piece map; scales
/// 4/5 and -3/5.  The fixed point interpolates (0,0), (1/2,1/2), (1,0).
Scenario build_example1();

/// Transports a compact-interval scenario through a homeomorphism j from an
/// unbounded ambient onto the interval: pieces become j^-1 o b o j, offsets
/// and scales are precomposed with j, and the fixed point equals f o j.
Scenario pullback_scenario(const Scenario& source, const Homeomorphism1D& j);

/// Direct construction on [0,+inf] with an empty core: (2/pi) atan covers
/// [0,1) and x+1 covers [1,+inf]; offset |x-1/2| - 1/2 up to x=2 and 2/x
/// beyond; scales 3/4 and 7/10.
Scenario build_halfline_global();

struct DecayReport {
  double sup = 0.0;     // sup of |x * f(x)| over the probes
  double argmax = 0.0;  // probe where the sup was attained
  int probes = 0;
};

/// Probes |x * f(x)| at log-spaced points of [x_lo, x_hi] to measure the
/// tail decay of a fixed point on an unbounded ambient.  Requires x_lo >= 1.
DecayReport decay_report(const FractalFunction& f, double x_lo, double x_hi, int probes);

}  // namespace fraxterp
