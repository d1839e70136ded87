#include "divcurl/kernels.hpp"

#include <vector>

namespace divcurl {

IndexBox IndexBox::whole(const Grid& grid) {
  IndexBox box;
  for (int a = 0; a < grid.dim(); ++a) box.hi[a] = grid.n() - 1;
  return box;
}

namespace kernels {
namespace {

// Line L covers flat indices [L*n, L*n + n); its axis-2/axis-3 coordinates are
// L % n and L / n.
struct LineCoords {
  int j;
  int k;
};

inline LineCoords line_coords(std::size_t line, int n) {
  const auto un = static_cast<std::size_t>(n);
  return {static_cast<int>(line % un), static_cast<int>(line / un)};
}

inline std::size_t line_count(const Grid& grid) {
  return grid.size() / static_cast<std::size_t>(grid.n());
}

inline double d1(const double* f, std::size_t i, std::size_t s, int c, int n,
                 double h) {
  if (c == 0) return (-3.0 * f[i] + 4.0 * f[i + s] - f[i + 2 * s]) / (2.0 * h);
  if (c == n - 1)
    return (3.0 * f[i] - 4.0 * f[i - s] + f[i - 2 * s]) / (2.0 * h);
  return (f[i + s] - f[i - s]) / (2.0 * h);
}

inline double d2(const double* f, std::size_t i, std::size_t s, int c, int n,
                 double h) {
  if (c == 0)
    return (2.0 * f[i] - 5.0 * f[i + s] + 4.0 * f[i + 2 * s] - f[i + 3 * s]) /
           (h * h);
  if (c == n - 1)
    return (2.0 * f[i] - 5.0 * f[i - s] + 4.0 * f[i - 2 * s] - f[i - 3 * s]) /
           (h * h);
  return (f[i + s] - 2.0 * f[i] + f[i - s]) / (h * h);
}

inline double axis_weight(int c, int lo, int hi, double h) {
  if (c < lo || c > hi) return 0.0;
  return (c == lo || c == hi) ? 0.5 * h : h;
}

}  // namespace

void first_difference(const Grid& grid, std::span<const double> in, int axis,
                      std::span<double> out) {
  const int n = grid.n();
  const double h = grid.h();
  const std::size_t s = grid.stride(axis);
  const double* f = in.data();
  double* g = out.data();
  parallel_for(line_count(grid), [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    const std::size_t base = line * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const int c = axis == 0 ? i : (axis == 1 ? j : k);
      g[base + i] = d1(f, base + i, s, c, n, h);
    }
  });
}

void second_difference(const Grid& grid, std::span<const double> in, int axis,
                       std::span<double> out) {
  const int n = grid.n();
  const double h = grid.h();
  const std::size_t s = grid.stride(axis);
  const double* f = in.data();
  double* g = out.data();
  parallel_for(line_count(grid), [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    const std::size_t base = line * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const int c = axis == 0 ? i : (axis == 1 ? j : k);
      g[base + i] = d2(f, base + i, s, c, n, h);
    }
  });
}

void laplacian(const Grid& grid, std::span<const double> in,
               std::span<double> out) {
  const int n = grid.n();
  const int dim = grid.dim();
  const double h = grid.h();
  const double* f = in.data();
  double* g = out.data();
  parallel_for(line_count(grid), [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    const std::size_t base = line * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const int c[3] = {i, j, k};
      double acc = 0.0;
      for (int a = 0; a < dim; ++a) {
        acc += d2(f, base + i, grid.stride(a), c[a], n, h);
      }
      g[base + i] = acc;
    }
  });
}

void dirichlet_apply(const Grid& grid, std::span<const double> in,
                     std::span<double> out) {
  const int n = grid.n();
  const int dim = grid.dim();
  const double h2 = grid.h() * grid.h();
  const double* f = in.data();
  double* g = out.data();
  parallel_for(line_count(grid), [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    const std::size_t base = line * static_cast<std::size_t>(n);
    const bool edge_line = (j == 0 || j == n - 1) ||
                           (dim == 3 && (k == 0 || k == n - 1));
    for (int i = 0; i < n; ++i) {
      const std::size_t p = base + i;
      if (edge_line || i == 0 || i == n - 1) {
        g[p] = 0.0;
        continue;
      }
      double acc = 0.0;
      for (int a = 0; a < dim; ++a) {
        const std::size_t s = grid.stride(a);
        acc += (2.0 * f[p] - f[p + s] - f[p - s]);
      }
      g[p] = acc / h2;
    }
  });
}

double trapezoid_sum(const Grid& grid, std::span<const double> f,
                     const IndexBox& box) {
  const int n = grid.n();
  const int dim = grid.dim();
  const double h = grid.h();
  const std::size_t lines = line_count(grid);
  std::vector<double> partial(lines, 0.0);
  parallel_for(lines, [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    const double w1 = axis_weight(j, box.lo[1], box.hi[1], h);
    const double w2 = dim == 3 ? axis_weight(k, box.lo[2], box.hi[2], h) : 1.0;
    const double lw = w1 * w2;
    if (lw == 0.0) return;
    const std::size_t base = line * static_cast<std::size_t>(n);
    double acc = 0.0;
    for (int i = box.lo[0]; i <= box.hi[0]; ++i) {
      acc += axis_weight(i, box.lo[0], box.hi[0], h) * f[base + i];
    }
    partial[line] = acc * lw;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double interior_dot(const Grid& grid, std::span<const double> a,
                    std::span<const double> b) {
  const int n = grid.n();
  const int dim = grid.dim();
  const std::size_t lines = line_count(grid);
  std::vector<double> partial(lines, 0.0);
  parallel_for(lines, [&](std::size_t line) {
    const auto [j, k] = line_coords(line, n);
    if (j == 0 || j == n - 1) return;
    if (dim == 3 && (k == 0 || k == n - 1)) return;
    const std::size_t base = line * static_cast<std::size_t>(n);
    double acc = 0.0;
    for (int i = 1; i < n - 1; ++i) acc += a[base + i] * b[base + i];
    partial[line] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  parallel_for(y.size(), [&](std::size_t i) { y[i] += alpha * x[i]; });
}

void xpby(std::span<const double> r, double beta, std::span<double> p) {
  parallel_for(p.size(), [&](std::size_t i) { p[i] = r[i] + beta * p[i]; });
}

}  // namespace kernels
}  // namespace divcurl
