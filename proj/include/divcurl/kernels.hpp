#pragma once

// Node-loop kernels. Everything in `divcurl::kernels` is OpenMP-parallel over
// grid lines (runs of n nodes along axis 1); `divcurl::reference` holds plain
// serial versions with identical arithmetic, kept as the test oracle and the
// benchmark baseline.
//
// Reductions are deterministic: each line is summed serially, then line
// partials are added in line order, so results do not depend on the thread
// count and match the reference bit for bit.

#include <array>
#include <cstddef>
#include <span>

#include "divcurl/grid.hpp"

namespace divcurl {

/// Inclusive node-index range per axis, used for sub-box quadrature.
struct IndexBox {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};

  static IndexBox whole(const Grid& grid);
};

namespace kernels {

template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto m = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
}

/// Centred first difference along `axis`, one-sided second order at faces.
void first_difference(const Grid& grid, std::span<const double> in, int axis,
                      std::span<double> out);

/// Centred second difference along `axis`, one-sided second order at faces.
void second_difference(const Grid& grid, std::span<const double> in, int axis,
                       std::span<double> out);

/// Compact (5-point / 7-point) Laplacian; faces use one-sided second
/// differences along the normal axis.
void laplacian(const Grid& grid, std::span<const double> in,
               std::span<double> out);

/// out = -Lap_h(in) on interior nodes, 0 on boundary nodes. Boundary values of
/// `in` are read as the Dirichlet data (zero for homogeneous problems).
void dirichlet_apply(const Grid& grid, std::span<const double> in,
                     std::span<double> out);

/// Product trapezoid rule restricted to `box` (half weights on its faces).
double trapezoid_sum(const Grid& grid, std::span<const double> f,
                     const IndexBox& box);

/// Unweighted sum of a[i]*b[i] over interior nodes.
double interior_dot(const Grid& grid, std::span<const double> a,
                    std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// p = r + beta * p
void xpby(std::span<const double> r, double beta, std::span<double> p);

}  // namespace kernels

namespace reference {

void first_difference(const Grid& grid, std::span<const double> in, int axis,
                      std::span<double> out);
void second_difference(const Grid& grid, std::span<const double> in, int axis,
                       std::span<double> out);
void laplacian(const Grid& grid, std::span<const double> in,
               std::span<double> out);
void dirichlet_apply(const Grid& grid, std::span<const double> in,
                     std::span<double> out);
double trapezoid_sum(const Grid& grid, std::span<const double> f,
                     const IndexBox& box);
double interior_dot(const Grid& grid, std::span<const double> a,
                    std::span<const double> b);

}  // namespace reference

}  // namespace divcurl
