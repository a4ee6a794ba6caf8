#pragma once

#include <string>
#include <vector>

#include "fraxterp/rb_operator.hpp"

namespace fraxterp::cli {

/// 12 significant digits, the fixed sample format.
std::string fmt_sig(double v);

/// Finite values via fmt_sig; end markers as "inf"/"-inf".
std::string fmt_point(const ExtendedPoint& x);

/// A sampled curve: abscissae (possibly with end markers) and values.
struct Series {
  std::vector<ExtendedPoint> x;
  std::vector<double> f;
};

/// Grid fixed point of the operator sampled at its own nodes.
Series sample_series(const RBOperator& op, int cells, double tol);

/// Header "x,f", one row per point.
void write_series_csv(const Series& s, const std::string& path);

/// 800x480 single-polyline plot; the x axis is the unit (compactified)
/// coordinate of the ambient, annotated with the extent's end points.
void write_series_svg(const Series& s, const Ambient& ambient, const std::string& path);

}  // namespace fraxterp::cli
