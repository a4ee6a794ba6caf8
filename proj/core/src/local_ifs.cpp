#include "fraxterp/local_ifs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "fraxterp/errors.hpp"
#include "fraxterp/parallel.hpp"

namespace fraxterp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void warn_if_discontinuous(const VerticalMap& v, const std::string& label,
                           std::vector<std::string>& warnings) {
  if (!v.is_affine()) return;
  if (!v.offset().is_continuous_at_breaks())
    warnings.push_back(label + ": offset jumps at a breakpoint; the plane map is discontinuous");
  if (!v.scale().is_continuous_at_breaks())
    warnings.push_back(label + ": scale jumps at a breakpoint; the plane map is discontinuous");
}

}  // namespace

LocalIFS build_local_ifs(const RBOperator& op) {
  LocalIFS ifs;
  const PartitionScheme& scheme = op.scheme();
  for (size_t j = 0; j < scheme.bounded().size(); ++j) {
    const Piece& p = scheme.bounded()[j];
    const VerticalMap& v = op.bounded_vertical()[j];
    ifs.maps.push_back({p.domain, p.map, v});
    warn_if_discontinuous(v, PieceId{PieceKind::Bounded, static_cast<int>(j) + 1}.str(),
                          ifs.warnings);
  }
  for (size_t i = 0; i < scheme.unbounded().size(); ++i) {
    const Piece& p = scheme.unbounded()[i];
    const VerticalMap& v = op.unbounded_vertical()[i];
    ifs.maps.push_back({p.domain, p.map, v});
    warn_if_discontinuous(v, PieceId{PieceKind::Unbounded, static_cast<int>(i) + 1}.str(),
                          ifs.warnings);
  }
  return ifs;
}

CellSet::CellSet(const Ambient& ambient, const Window& window, int nx, int ny)
    : ambient_(ambient), win_(window), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) throw StructuralError("CellSet: resolution must be positive");
  if (!(window.uhi > window.ulo) || !(window.yhi > window.ylo))
    throw StructuralError("CellSet: window must have positive extent");
  bits_.assign((static_cast<size_t>(nx) * ny + 63) / 64, 0);
}

bool CellSet::same_frame(const CellSet& other) const {
  return ambient_ == other.ambient_ && win_.ulo == other.win_.ulo && win_.uhi == other.win_.uhi &&
         win_.ylo == other.win_.ylo && win_.yhi == other.win_.yhi && nx_ == other.nx_ &&
         ny_ == other.ny_;
}

bool CellSet::get(int ix, int iy) const {
  size_t idx = static_cast<size_t>(iy) * nx_ + ix;
  return (bits_[idx >> 6] >> (idx & 63)) & 1u;
}

void CellSet::set(int ix, int iy) {
  size_t idx = static_cast<size_t>(iy) * nx_ + ix;
  bits_[idx >> 6] |= uint64_t{1} << (idx & 63);
}

void CellSet::clear(int ix, int iy) {
  size_t idx = static_cast<size_t>(iy) * nx_ + ix;
  bits_[idx >> 6] &= ~(uint64_t{1} << (idx & 63));
}

long CellSet::count() const {
  long total = 0;
  for (uint64_t word : bits_) total += __builtin_popcountll(word);
  return total;
}

double CellSet::cell_diagonal() const { return std::hypot(cell_du(), cell_dy()); }

bool CellSet::locate_cell(double u, double y, int& ix, int& iy) const {
  if (!(u == u) || !(y == y)) return false;  // NaN guard
  double rel_u = (u - win_.ulo) / cell_du();
  double rel_y = (y - win_.ylo) / cell_dy();
  ix = static_cast<int>(std::floor(rel_u));
  iy = static_cast<int>(std::floor(rel_y));
  double slack = 1e-12;
  if (ix == nx_ && u <= win_.uhi + slack * (win_.uhi - win_.ulo)) ix = nx_ - 1;
  if (iy == ny_ && y <= win_.yhi + slack * (win_.yhi - win_.ylo)) iy = ny_ - 1;
  return ix >= 0 && ix < nx_ && iy >= 0 && iy < ny_;
}

CellSet CellSet::unite(const CellSet& a, const CellSet& b) {
  if (!a.same_frame(b)) throw StructuralError("CellSet::unite: frames differ");
  CellSet out = a;
  for (size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
  return out;
}

bool CellSet::subset(const CellSet& a, const CellSet& b) {
  if (!a.same_frame(b)) throw StructuralError("CellSet::subset: frames differ");
  for (size_t i = 0; i < a.bits_.size(); ++i)
    if (a.bits_[i] & ~b.bits_[i]) return false;
  return true;
}

CellSet apply_floc(const LocalIFS& ifs, const CellSet& s, long* clipped) {
  const Ambient& amb = s.ambient();
  CellSet out(amb, s.window(), s.nx(), s.ny());
  long clip_count = 0;

  struct MapSpan {
    const LocalIFSMap* map;
    double a, b;  // X in unit coordinates
  };
  std::vector<MapSpan> spans;
  for (const LocalIFSMap& m : ifs.maps)
    spans.push_back({&m, amb.to_unit(m.X.lo), amb.to_unit(m.X.hi)});

  double du = s.cell_du();
  for (int iy = 0; iy < s.ny(); ++iy) {
    for (int ix = 0; ix < s.nx(); ++ix) {
      if (!s.get(ix, iy)) continue;
      double u0 = s.window().ulo + ix * du;
      double u1 = u0 + du;
      double uc = s.center_u(ix);
      double yc = s.center_y(iy);
      for (const MapSpan& span : spans) {
        if (u1 < span.a || u0 > span.b) continue;
        double u_eff = std::min(std::max(uc, span.a), std::min(span.b, u1));
        u_eff = std::max(u_eff, u0);
        ExtendedPoint x = amb.from_unit(u_eff);
        ExtendedPoint x2 = span.map->f.forward(x);
        double y2 = span.map->g.apply(x, yc);
        int jx, jy;
        if (out.locate_cell(amb.to_unit(x2), y2, jx, jy))
          out.set(jx, jy);
        else
          ++clip_count;
      }
    }
  }
  if (clipped) *clipped = clip_count;
  return out;
}

namespace {

// 1-D squared distance transform with sample spacing sqrt(w2): lower
// envelope of parabolas (linear-time).
void dt1d(const std::vector<double>& f, std::vector<double>& d, int n, double w2,
          std::vector<int>& v, std::vector<double>& z) {
  int k = -1;
  double s = 0.0;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0) {
      int p = v[k];
      s = ((f[q] + w2 * q * q) - (f[p] + w2 * p * p)) / (2.0 * w2 * (q - p));
      if (s <= z[k])
        --k;
      else
        break;
    }
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
    } else {
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
    }
  }
  if (k < 0) {
    std::fill(d.begin(), d.begin() + n, kInf);
    return;
  }
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    while (z[idx + 1] < i) ++idx;
    double diff = static_cast<double>(i - v[idx]);
    d[i] = f[v[idx]] + w2 * diff * diff;
  }
}

// Squared distance (window metric) from every cell center to the occupied
// cells of src.
std::vector<double> squared_edt(const CellSet& src) {
  int nx = src.nx(), ny = src.ny();
  double wx2 = src.cell_du() * src.cell_du();
  double wy2 = src.cell_dy() * src.cell_dy();
  std::vector<double> grid(static_cast<size_t>(nx) * ny);

  parallel_for(nx, [&](int ix) {
    std::vector<double> f(ny), d(ny), z(ny + 1);
    std::vector<int> v(ny);
    for (int iy = 0; iy < ny; ++iy) f[iy] = src.get(ix, iy) ? 0.0 : kInf;
    dt1d(f, d, ny, wy2, v, z);
    for (int iy = 0; iy < ny; ++iy) grid[static_cast<size_t>(iy) * nx + ix] = d[iy];
  });
  parallel_for(ny, [&](int iy) {
    std::vector<double> f(nx), d(nx), z(nx + 1);
    std::vector<int> v(nx);
    for (int ix = 0; ix < nx; ++ix) f[ix] = grid[static_cast<size_t>(iy) * nx + ix];
    dt1d(f, d, nx, wx2, v, z);
    for (int ix = 0; ix < nx; ++ix) grid[static_cast<size_t>(iy) * nx + ix] = d[ix];
  });
  return grid;
}

void directed_distance(const CellSet& from, const std::vector<double>& edt_to, double& dist,
                       int witness[2]) {
  dist = 0.0;
  witness[0] = witness[1] = -1;
  bool any = false;
  for (int iy = 0; iy < from.ny(); ++iy)
    for (int ix = 0; ix < from.nx(); ++ix) {
      if (!from.get(ix, iy)) continue;
      any = true;
      double d2 = edt_to[static_cast<size_t>(iy) * from.nx() + ix];
      double d = d2 == kInf ? kInf : std::sqrt(d2);
      if (d > dist) {
        dist = d;
        witness[0] = ix;
        witness[1] = iy;
      }
    }
  if (!any) dist = 0.0;  // sup over the empty set
}

}  // namespace

HausdorffReport hausdorff_distance(const CellSet& a, const CellSet& b) {
  if (!a.same_frame(b)) throw StructuralError("hausdorff_distance: frames differ");
  HausdorffReport r;
  if (a.empty() && b.empty()) return r;
  if (!a.empty()) {
    std::vector<double> to_b = b.empty() ? std::vector<double>() : squared_edt(b);
    if (b.empty()) {
      r.directed_ab = kInf;
    } else {
      directed_distance(a, to_b, r.directed_ab, r.witness_a);
    }
  }
  if (!b.empty()) {
    std::vector<double> to_a = a.empty() ? std::vector<double>() : squared_edt(a);
    if (a.empty()) {
      r.directed_ba = kInf;
    } else {
      directed_distance(b, to_a, r.directed_ba, r.witness_b);
    }
  }
  r.distance = std::max(r.directed_ab, r.directed_ba);
  return r;
}

AttractorResult attractor_iterate(const LocalIFS& ifs, const CellSet& seed, int max_iters,
                                  double stop_tol) {
  if (max_iters < 1) throw StructuralError("attractor_iterate: max_iters must be >= 1");
  AttractorResult result{seed, {}, false, 0};
  for (int k = 0; k < max_iters; ++k) {
    long clipped = 0;
    CellSet next = apply_floc(ifs, result.final, &clipped);
    result.clipped_total += clipped;
    result.trace.push_back(hausdorff_distance(next, result.final));
    result.final = std::move(next);
    if (result.trace.back().distance <= stop_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

namespace {

// A column-to-columns transfer induced by one piece: the graph over the
// piece image is the vertical image of the graph over the piece domain, so
// the value band of a source column propagates to the columns its image
// crosses.
struct BandEdge {
  int src = 0;
  int dst_lo = 0, dst_hi = 0;
  bool affine = false;
  double p = 0.0, s = 0.0;       // affine fast path
  ExtendedPoint xi;              // representative argument of the slice
  const VerticalMap* g = nullptr;
};

}  // namespace

CellSet rasterize_graph(const FractalFunction& f, const Window& window, int nx, int ny,
                        int samples_per_column) {
  if (samples_per_column < 1)
    throw StructuralError("rasterize_graph: needs at least one sample per column");
  const RBOperator& op = f.op();
  const Ambient& amb = op.scheme().ambient();
  CellSet out(amb, window, nx, ny);
  double du = out.cell_du();
  double dy = out.cell_dy();
  double tol = std::min(1e-6, dy / 16.0);

  // Seed bands with certified point samples.
  std::vector<double> blo(nx), bhi(nx);
  parallel_for(nx, [&](int ix) {
    double ymin = kInf, ymax = -kInf;
    for (int s = 0; s < samples_per_column; ++s) {
      double u = window.ulo + (ix + (s + 0.5) / samples_per_column) * du;
      ExtendedPoint x = amb.from_unit(u);
      double y = evaluate(f, x, tol);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    blo[ix] = ymin;
    bhi[ix] = ymax;
  });

  // Point samples miss the range a fractal attains between them: the deficit
  // shrinks only with the modulus of continuity, not with the cell size.
  // The fixed point fills its own gaps: sweep the per-piece band transfer
  // until the columns stop growing.  Each sweep contracts the remaining
  // deficit by the operator's contraction factor.
  std::vector<const Piece*> pieces;
  std::vector<const VerticalMap*> verticals;
  for (size_t j = 0; j < op.scheme().bounded().size(); ++j) {
    pieces.push_back(&op.scheme().bounded()[j]);
    verticals.push_back(&op.bounded_vertical()[j]);
  }
  for (size_t i = 0; i < op.scheme().unbounded().size(); ++i) {
    pieces.push_back(&op.scheme().unbounded()[i]);
    verticals.push_back(&op.unbounded_vertical()[i]);
  }

  std::vector<BandEdge> edges;
  for (int ix = 0; ix < nx; ++ix) {
    double u0 = window.ulo + ix * du;
    double u1 = u0 + du;
    for (size_t j = 0; j < pieces.size(); ++j) {
      double a = amb.to_unit(pieces[j]->domain.lo);
      double b = amb.to_unit(pieces[j]->domain.hi);
      double s0 = std::max(u0, a);
      double s1 = std::min(u1, b);
      if (!(s1 > s0)) continue;
      ExtendedPoint x0 = amb.from_unit(s0);
      ExtendedPoint x1 = amb.from_unit(s1);
      double t0 = amb.to_unit(pieces[j]->map.forward(x0));
      double t1 = amb.to_unit(pieces[j]->map.forward(x1));
      if (t0 > t1) std::swap(t0, t1);
      t0 = std::max(t0, window.ulo);
      t1 = std::min(t1, window.uhi);
      if (!(t1 >= t0)) continue;
      BandEdge e;
      e.src = ix;
      e.dst_lo = std::clamp(static_cast<int>(std::floor((t0 - window.ulo) / du)), 0, nx - 1);
      e.dst_hi = std::clamp(static_cast<int>(std::floor((t1 - window.ulo) / du)), 0, nx - 1);
      e.xi = amb.from_unit(0.5 * (s0 + s1));
      e.g = verticals[j];
      e.affine = verticals[j]->is_affine();
      if (e.affine) {
        e.p = e.g->apply(e.xi, 0.0);
        e.s = e.g->apply(e.xi, 1.0) - e.p;
      }
      edges.push_back(e);
    }
  }

  double gate = dy / 16.0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool grew = false;
    for (const BandEdge& e : edges) {
      double vlo, vhi;
      if (e.affine) {
        vlo = e.p + e.s * blo[e.src];
        vhi = e.p + e.s * bhi[e.src];
      } else {
        double y0 = e.g->apply(e.xi, blo[e.src]);
        double y1 = e.g->apply(e.xi, bhi[e.src]);
        double ym = e.g->apply(e.xi, 0.5 * (blo[e.src] + bhi[e.src]));
        vlo = std::min({y0, y1, ym});
        vhi = std::max({y0, y1, ym});
      }
      if (vlo > vhi) std::swap(vlo, vhi);
      for (int k = e.dst_lo; k <= e.dst_hi; ++k) {
        if (vlo < blo[k] - gate || vhi > bhi[k] + gate) grew = true;
        blo[k] = std::min(blo[k], vlo);
        bhi[k] = std::max(bhi[k], vhi);
      }
    }
    if (!grew) break;
  }

  for (int ix = 0; ix < nx; ++ix) {
    double ymin = blo[ix], ymax = bhi[ix];
    if (ymax < window.ylo || ymin > window.yhi) continue;
    int lo = static_cast<int>(std::floor((std::max(ymin, window.ylo) - window.ylo) / dy));
    int hi = static_cast<int>(std::floor((std::min(ymax, window.yhi) - window.ylo) / dy));
    lo = std::max(lo, 0);
    hi = std::min(hi, ny - 1);
    for (int iy = lo; iy <= hi; ++iy) out.set(ix, iy);
  }
  return out;
}

HausdorffReport graph_invariance(const LocalIFS& ifs, const FractalFunction& f,
                                 const Window& window, int nx, int ny) {
  CellSet graph = rasterize_graph(f, window, nx, ny);
  CellSet mapped = apply_floc(ifs, graph);
  return hausdorff_distance(mapped, graph);
}

void write_pgm(const CellSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("write_pgm: cannot open " + path);
  out << "P2\n" << s.nx() << " " << s.ny() << "\n1\n";
  for (int iy = s.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < s.nx(); ++ix) out << (s.get(ix, iy) ? 1 : 0) << (ix + 1 < s.nx() ? " " : "");
    out << "\n";
  }
}

void write_occupancy_csv(const CellSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("write_occupancy_csv: cannot open " + path);
  for (int iy = s.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < s.nx(); ++ix) out << (s.get(ix, iy) ? 1 : 0) << (ix + 1 < s.nx() ? "," : "");
    out << "\n";
  }
}

}  // namespace fraxterp
