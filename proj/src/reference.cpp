// Serial reference kernels. Written node by node from the stencil formulas,
// without the line decomposition used by the parallel kernels.

#include "divcurl/kernels.hpp"

namespace divcurl::reference {
namespace {

template <class Visit>
void for_each_node(const Grid& grid, Visit&& visit) {
  const int n = grid.n();
  const int n3 = grid.dim() == 3 ? n : 1;
  for (int k = 0; k < n3; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) visit(NodeIndex{i, j, k});
}

NodeIndex shifted(NodeIndex idx, int axis, int by) {
  idx[axis] += by;
  return idx;
}

double first(const Grid& grid, std::span<const double> f, const NodeIndex& idx,
             int axis) {
  const int n = grid.n();
  const double h = grid.h();
  auto at = [&](int by) { return f[grid.flat(shifted(idx, axis, by))]; };
  const int c = idx[axis];
  if (c == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (c == n - 1) return (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * h);
  return (at(1) - at(-1)) / (2.0 * h);
}

double second(const Grid& grid, std::span<const double> f,
              const NodeIndex& idx, int axis) {
  const int n = grid.n();
  const double h = grid.h();
  auto at = [&](int by) { return f[grid.flat(shifted(idx, axis, by))]; };
  const int c = idx[axis];
  if (c == 0)
    return (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
  if (c == n - 1)
    return (2.0 * at(0) - 5.0 * at(-1) + 4.0 * at(-2) - at(-3)) / (h * h);
  return (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
}

bool on_boundary(const Grid& grid, const NodeIndex& idx) {
  for (int a = 0; a < grid.dim(); ++a) {
    if (idx[a] == 0 || idx[a] == grid.n() - 1) return true;
  }
  return false;
}

double weight(int c, int lo, int hi, double h) {
  if (c < lo || c > hi) return 0.0;
  return (c == lo || c == hi) ? 0.5 * h : h;
}

}  // namespace

void first_difference(const Grid& grid, std::span<const double> in, int axis,
                      std::span<double> out) {
  for_each_node(grid, [&](const NodeIndex& idx) {
    out[grid.flat(idx)] = first(grid, in, idx, axis);
  });
}

void second_difference(const Grid& grid, std::span<const double> in, int axis,
                       std::span<double> out) {
  for_each_node(grid, [&](const NodeIndex& idx) {
    out[grid.flat(idx)] = second(grid, in, idx, axis);
  });
}

void laplacian(const Grid& grid, std::span<const double> in,
               std::span<double> out) {
  for_each_node(grid, [&](const NodeIndex& idx) {
    double acc = 0.0;
    for (int a = 0; a < grid.dim(); ++a) acc += second(grid, in, idx, a);
    out[grid.flat(idx)] = acc;
  });
}

void dirichlet_apply(const Grid& grid, std::span<const double> in,
                     std::span<double> out) {
  const double h2 = grid.h() * grid.h();
  for_each_node(grid, [&](const NodeIndex& idx) {
    const std::size_t p = grid.flat(idx);
    if (on_boundary(grid, idx)) {
      out[p] = 0.0;
      return;
    }
    double acc = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      acc += (2.0 * in[p] - in[grid.flat(shifted(idx, a, 1))] -
              in[grid.flat(shifted(idx, a, -1))]);
    }
    out[p] = acc / h2;
  });
}

double trapezoid_sum(const Grid& grid, std::span<const double> f,
                     const IndexBox& box) {
  const int n = grid.n();
  const double h = grid.h();
  const int n3 = grid.dim() == 3 ? n : 1;
  double total = 0.0;
  for (int k = 0; k < n3; ++k) {
    for (int j = 0; j < n; ++j) {
      const double w2 = grid.dim() == 3 ? weight(k, box.lo[2], box.hi[2], h) : 1.0;
      const double lw = weight(j, box.lo[1], box.hi[1], h) * w2;
      if (lw == 0.0) {
        total += 0.0;
        continue;
      }
      double acc = 0.0;
      for (int i = box.lo[0]; i <= box.hi[0]; ++i) {
        acc += weight(i, box.lo[0], box.hi[0], h) * f[grid.flat({i, j, k})];
      }
      total += acc * lw;
    }
  }
  return total;
}

double interior_dot(const Grid& grid, std::span<const double> a,
                    std::span<const double> b) {
  const int n = grid.n();
  const int n3 = grid.dim() == 3 ? n : 1;
  double total = 0.0;
  for (int k = 0; k < n3; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j == 0 || j == n - 1 ||
          (grid.dim() == 3 && (k == 0 || k == n - 1))) {
        total += 0.0;
        continue;
      }
      double acc = 0.0;
      for (int i = 1; i < n - 1; ++i) {
        const std::size_t p = grid.flat({i, j, k});
        acc += a[p] * b[p];
      }
      total += acc;
    }
  }
  return total;
}

}  // namespace divcurl::reference
