#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "fraxterp/errors.hpp"
#include "fraxterp/parallel.hpp"

namespace fraxterp::cli {

std::string fmt_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_point(const ExtendedPoint& x) {
  if (x.is_plus_inf()) return "inf";
  if (x.is_minus_inf()) return "-inf";
  return fmt_sig(x.value());
}

Series sample_series(const RBOperator& op, int cells, double tol) {
  // Certified per-node evaluation rather than one grid sweep: node values are
  // then independent of the sampling resolution, so refining the grid only
  // inserts rows without disturbing the shared ones.
  FractalFunction f(op, tol);
  const Ambient& amb = op.scheme().ambient();
  Series s;
  s.x.resize(cells + 1);
  s.f.resize(cells + 1);
  parallel_for(cells + 1, [&](int i) {
    ExtendedPoint x = amb.from_unit(static_cast<double>(i) / cells);
    s.x[i] = x;
    s.f[i] = evaluate(f, x, tol);
  });
  return s;
}

void write_series_csv(const Series& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot open output file " + path);
  out << "x,f\n";
  for (size_t i = 0; i < s.x.size(); ++i)
    out << fmt_point(s.x[i]) << "," << fmt_sig(s.f[i]) << "\n";
}

void write_series_svg(const Series& s, const Ambient& ambient, const std::string& path) {
  if (s.x.empty()) throw StructuralError("cannot plot an empty series");
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot open output file " + path);

  const double width = 800.0, height = 480.0;
  const double left = 50.0, right = 780.0, top = 20.0, bottom = 440.0;
  double ymin = *std::min_element(s.f.begin(), s.f.end());
  double ymax = *std::max_element(s.f.begin(), s.f.end());
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](const ExtendedPoint& x) {
    return left + ambient.to_unit(x) * (right - left);
  };
  auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  char buf[128];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" "
         "viewBox=\"0 0 800 480\">\n";
  out << "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                left, bottom, right, bottom);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                left, top, left, bottom);
  out << buf;
  if (ymin < 0.0 && ymax > 0.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#bbbbbb\" "
                  "stroke-dasharray=\"4 3\"/>\n",
                  left, py(0.0), right, py(0.0));
    out << buf;
  }

  out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1\" points=\"";
  for (size_t i = 0; i < s.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f%s", px(s.x[i]), py(s.f[i]),
                  i + 1 < s.x.size() ? " " : "");
    out << buf;
  }
  out << "\"/>\n";

  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"start\">%s</text>\n",
                left, bottom + 16.0, ambient.extent().lo.str().c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%s</text>\n",
                right, bottom + 16.0, ambient.extent().hi.str().c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%s</text>\n",
                left - 6.0, py(ymin + pad) + 4.0, fmt_sig(ymin + pad).c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%s</text>\n",
                left - 6.0, py(ymax - pad) + 4.0, fmt_sig(ymax - pad).c_str());
  out << buf;
  if (ambient.kind() != AmbientKind::CompactInterval) {
    out << "<text x=\"415\" y=\"470\" font-size=\"11\" text-anchor=\"middle\" "
           "fill=\"#555555\">compactified axis</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fraxterp::cli
