#pragma once

// Brute-force reference values computed from the fixed-point equations alone,
// with no help from the library under test.  Both lattices are closed under
// the preimage maps, so the iteration needs no interpolation and converges
// geometrically to machine precision.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

// f(x) = g(x) + 0.8 f(2x)        on [0, 1/2]
// f(x) = g(x) - 0.6 f(2x - 1)    on [1/2, 1]
// g(x) = min(x, 1 - x), values on the dyadic lattice i / 2^k.
inline std::vector<double> dyadic_tent_lattice(int log2_cells, int iters) {
  const size_t n = (size_t{1} << log2_cells) + 1;
  const size_t half = (n - 1) / 2;
  std::vector<double> f(n, 0.0), next(n, 0.0);
  for (int it = 0; it < iters; ++it) {
    for (size_t i = 0; i < n; ++i) {
      double x = static_cast<double>(i) / static_cast<double>(n - 1);
      double g = std::min(x, 1.0 - x);
      if (i <= half)
        next[i] = g + 0.8 * f[2 * i];
      else
        next[i] = g - 0.6 * f[2 * i - (n - 1)];
    }
    f.swap(next);
  }
  return f;  // f[i] is the value at x = i / 2^log2_cells
}

// f(x) = g(x) + 0.75 f(tan(pi x / 2))   on [0, 1)
// f(x) = g(x) + 0.70 f(x - 1)           on [1, inf)
// g(x) = -x on [0, 1/2], x - 1 on [1/2, 2], 2/x beyond; lattice x = i / 2.
// The only sub-1 lattice points are 0 and 1/2, whose preimages 0 and 1 are
// again lattice points, so the iteration closes over indices.
inline std::vector<double> halfline_lattice(size_t points, int iters) {
  std::vector<double> f(points, 0.0), next(points, 0.0);
  auto g = [](double x) {
    if (x <= 0.5) return -x;
    if (x <= 2.0) return x - 1.0;
    return 2.0 / x;
  };
  for (int it = 0; it < iters; ++it) {
    for (size_t i = 0; i < points; ++i) {
      double x = 0.5 * static_cast<double>(i);
      if (i < 2) {
        size_t pre = i == 0 ? 0 : 2;  // tan(0) = 0, tan(pi/4) = 1
        next[i] = g(x) + 0.75 * f[pre];
      } else {
        next[i] = g(x) + 0.70 * f[i - 2];
      }
    }
    f.swap(next);
  }
  return f;  // f[i] is the value at x = i / 2
}

}  // namespace oracles
