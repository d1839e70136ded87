#include "divcurl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace divcurl {

IndexBox index_box(const Grid& grid, const Box& box) {
  IndexBox ib;
  const double h = grid.h();
  const double slack = 1e-9;
  for (int a = 0; a < grid.dim(); ++a) {
    const int lo = static_cast<int>(std::ceil(box.lower[a] / h - slack));
    const int hi = static_cast<int>(std::floor(box.upper[a] / h + slack));
    ib.lo[a] = std::max(lo, 0);
    ib.hi[a] = std::min(hi, grid.n() - 1);
    if (ib.lo[a] > ib.hi[a]) {
      throw std::invalid_argument("integration box contains no grid node on axis " +
                                  std::to_string(a + 1));
    }
  }
  return ib;
}

double integrate(const ScalarField& f) {
  return kernels::trapezoid_sum(f.grid(), f.values(), IndexBox::whole(f.grid()));
}

double integrate(const ScalarField& f, const Box& region) {
  return kernels::trapezoid_sum(f.grid(), f.values(), index_box(f.grid(), region));
}

namespace {

double lp_of_magnitude(const ScalarField& mag, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("Lp norm needs p >= 1, got " + std::to_string(p));
  }
  std::vector<double> powered(mag.size());
  const auto v = mag.values();
  if (p == 2.0) {
    kernels::parallel_for(powered.size(),
                          [&](std::size_t i) { powered[i] = v[i] * v[i]; });
  } else {
    kernels::parallel_for(powered.size(), [&](std::size_t i) {
      powered[i] = std::pow(std::abs(v[i]), p);
    });
  }
  const double total =
      kernels::trapezoid_sum(mag.grid(), powered, IndexBox::whole(mag.grid()));
  return p == 2.0 ? std::sqrt(total) : std::pow(total, 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) { return lp_of_magnitude(f, p); }

double lp_norm(const VectorField& f, double p) {
  return lp_of_magnitude(magnitude(f), p);
}

double interpolated_l2_error(const ScalarField& f, const ScalarFunction& exact) {
  const Grid& g = f.grid();
  const int dim = g.dim();
  const int cells = g.n() - 1;
  const double h = g.h();
  // Gauss-Legendre, 3 points on [0, 1].
  const double gx[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
  const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  const int nz = dim == 3 ? cells : 1;
  const int qz = dim == 3 ? 3 : 1;
  const auto line_cells = static_cast<std::size_t>(cells) * static_cast<std::size_t>(nz);
  std::vector<double> partial(line_cells, 0.0);
  kernels::parallel_for(line_cells, [&](std::size_t row) {
    const int cj = static_cast<int>(row % static_cast<std::size_t>(cells));
    const int ck = static_cast<int>(row / static_cast<std::size_t>(cells));
    double acc = 0.0;
    for (int ci = 0; ci < cells; ++ci) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < qz; ++c) {
            const double t[3] = {gx[a], gx[b], dim == 3 ? gx[c] : 0.0};
            const double w = gw[a] * gw[b] * (dim == 3 ? gw[c] : 1.0);
            double interp = 0.0;
            for (int corner = 0; corner < (1 << dim); ++corner) {
              NodeIndex idx{ci, cj, ck};
              double shape = 1.0;
              for (int ax = 0; ax < dim; ++ax) {
                const int bit = (corner >> ax) & 1;
                idx[ax] += bit;
                shape *= bit ? t[ax] : 1.0 - t[ax];
              }
              interp += shape * f.at(idx);
            }
            const Point x{(ci + t[0]) * h, (cj + t[1]) * h, dim == 3 ? (ck + t[2]) * h : 0.0};
            const double e = exact(x) - interp;
            acc += w * e * e;
          }
    }
    partial[row] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  double volume = 1.0;
  for (int a = 0; a < dim; ++a) volume *= h;
  return std::sqrt(total * volume);
}

}  // namespace divcurl
