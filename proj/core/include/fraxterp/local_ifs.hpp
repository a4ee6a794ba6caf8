#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fraxterp/rb_operator.hpp"

namespace fraxterp {

/// One partial map of the plane: h(x,y) = (f(x), g(x,y)) defined on X x Y.
struct LocalIFSMap {
  Interval X;
  Homeomorphism1D f;
  VerticalMap g;
};

/**
 * The family of partial plane maps induced by an operator: one map per
 * piece, bounded family first.  Offsets with jump discontinuities make the
 * plane maps discontinuous; such pieces are listed in warnings but kept.
 */
struct LocalIFS {
  std::vector<LocalIFSMap> maps;
  std::vector<std::string> warnings;
};

LocalIFS build_local_ifs(const RBOperator& op);

/// A window of the strip: x in unit (compactified) coordinates, y raw.
struct Window {
  double ulo = 0.0, uhi = 1.0;
  double ylo = -1.0, yhi = 1.0;
};

/**
 * A finite occupancy bitmap over a window, the discrete stand-in for a
 * subset of the strip.  Cells are indexed (ix, iy) from the lower-left;
 * equality is bitmap equality over an identical frame.
 */
class CellSet {
 public:
  CellSet(const Ambient& ambient, const Window& window, int nx, int ny);

  const Ambient& ambient() const { return ambient_; }
  const Window& window() const { return win_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  bool same_frame(const CellSet& other) const;

  bool get(int ix, int iy) const;
  void set(int ix, int iy);
  void clear(int ix, int iy);
  long count() const;
  bool empty() const { return count() == 0; }

  double cell_du() const { return (win_.uhi - win_.ulo) / nx_; }
  double cell_dy() const { return (win_.yhi - win_.ylo) / ny_; }
  /// Diagonal of one cell in the window metric (unit-x by raw-y).
  double cell_diagonal() const;

  double center_u(int ix) const { return win_.ulo + (ix + 0.5) * cell_du(); }
  double center_y(int iy) const { return win_.ylo + (iy + 0.5) * cell_dy(); }

  /// Cell indices covering a point of the window; false when outside.
  bool locate_cell(double u, double y, int& ix, int& iy) const;

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return a.same_frame(b) && a.bits_ == b.bits_;
  }

  /// Union / subset in the same frame.
  static CellSet unite(const CellSet& a, const CellSet& b);
  static bool subset(const CellSet& a, const CellSet& b);

 private:
  Ambient ambient_;
  Window win_;
  int nx_, ny_;
  std::vector<uint64_t> bits_;
};

/// One application of the set operator: each occupied cell whose x-range
/// meets a map's X is sent through that map (center point, clamped into X);
/// targets outside the window are dropped and counted in *clipped.
CellSet apply_floc(const LocalIFS& ifs, const CellSet& s, long* clipped = nullptr);

struct HausdorffReport {
  double distance = 0.0;  // max of the two directed values
  double directed_ab = 0.0;
  double directed_ba = 0.0;
  int witness_a[2] = {-1, -1};  // cell of a farthest from b
  int witness_b[2] = {-1, -1};  // cell of b farthest from a
};

/// Exact discrete Hausdorff distance between occupied cell centers in the
/// window metric (distance transform, linear in the cell count).  The
/// directed distance from an empty set is 0; to an empty set from a
/// nonempty one it is infinite.
HausdorffReport hausdorff_distance(const CellSet& a, const CellSet& b);

struct AttractorResult {
  CellSet final;
  std::vector<HausdorffReport> trace;  // successive-set distances
  bool converged = false;
  long clipped_total = 0;
};

/// Iterates the set operator from a seed until successive sets are within
/// stop_tol (window metric) or max_iters is reached.
AttractorResult attractor_iterate(const LocalIFS& ifs, const CellSet& seed, int max_iters,
                                  double stop_tol);

/// Marks, per column, every cell touched by the function's value range over
/// that column (sub-sampled with certified evaluations).
CellSet rasterize_graph(const FractalFunction& f, const Window& window, int nx, int ny,
                        int samples_per_column = 9);

/// Distance between the rasterized graph and its image under the set
/// operator; the continuum fixed-point graph is exactly invariant, so this
/// shrinks linearly with the cell size.
HausdorffReport graph_invariance(const LocalIFS& ifs, const FractalFunction& f,
                                 const Window& window, int nx, int ny);

/// Occupancy dumps (row-major, top row first, 0/1 cells).
void write_pgm(const CellSet& s, const std::string& path);
void write_occupancy_csv(const CellSet& s, const std::string& path);

}  // namespace fraxterp
