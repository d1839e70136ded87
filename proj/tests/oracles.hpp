#pragma once

// Test-only oracles. Nothing here calls into the library's quadrature or
// solvers, so the checks built on them stay independent.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "divcurl/grid.hpp"

namespace oracle {

// Frozen with mpmath (30 digits): radial integrals of the unit-peak bump of
// radius 0.3.
inline constexpr double kIntPhiR03 = 0.11413009450148365;
inline constexpr double kIntPhiSqR03 = 0.078416819720477217;
inline constexpr double kIntPhiR03Dim3 = 0.032373105489518775;

/// Composite Simpson on [a, b] with `m` (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int m) {
  if (m % 2) ++m;
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Integral over R^dim of bump(x)^power for a bump of the given radius,
/// reduced to a radial integral.
inline double radial_bump_integral(int dim, double radius, double power) {
  auto profile = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double v = std::exp(power * (1.0 - 1.0 / (1.0 - t * t)));
    return dim == 2 ? v * t : v * t * t;
  };
  const double surface = dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  return surface * std::pow(radius, dim) * simpson(profile, 0.0, 1.0, 20000);
}

/// Richardson extrapolation of the last two entries, error ~ h^order with
/// h halving between entries.
inline double richardson(const std::vector<double>& v, double order = 2.0) {
  const double r = std::pow(2.0, order);
  const double a = v[v.size() - 2];
  const double b = v.back();
  return b + (b - a) / (r - 1.0);
}

/// Dense symmetric positive definite solve (Cholesky), row-major matrix.
inline std::vector<double> cholesky_solve(std::vector<double> a,
                                          std::vector<double> b) {
  const std::size_t m = b.size();
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
    if (d <= 0.0) throw std::runtime_error("matrix not positive definite");
    d = std::sqrt(d);
    a[j * m + j] = d;
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = a[i * m + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
      a[i * m + j] = s / d;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * m + k] * b[k];
    b[i] = s / a[i * m + i];
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= a[k * m + i] * b[k];
    b[i] = s / a[i * m + i];
  }
  return b;
}

/// Dense solve of the 5-point Dirichlet problem on an n x n node grid,
/// assembled entry by entry. Returns the full nodal vector (zero boundary).
inline std::vector<double> dense_dirichlet_solve_2d(int n,
                                                    const std::vector<double>& f) {
  const int m = n - 2;
  const double h = 1.0 / (n - 1);
  const std::size_t unknowns = static_cast<std::size_t>(m) * m;
  std::vector<double> a(unknowns * unknowns, 0.0);
  std::vector<double> b(unknowns);
  auto id = [m](int i, int j) { return static_cast<std::size_t>((i - 1) + m * (j - 1)); };
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= m; ++i) {
      const std::size_t r = id(i, j);
      b[r] = f[static_cast<std::size_t>(i + n * j)];
      a[r * unknowns + r] = 4.0 / (h * h);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int q = 0; q < 4; ++q) {
        const int ii = i + di[q], jj = j + dj[q];
        if (ii >= 1 && ii <= m && jj >= 1 && jj <= m) {
          a[r * unknowns + id(ii, jj)] = -1.0 / (h * h);
        }
      }
    }
  }
  const std::vector<double> x = cholesky_solve(std::move(a), std::move(b));
  std::vector<double> u(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= m; ++i) u[static_cast<std::size_t>(i + n * j)] = x[id(i, j)];
  return u;
}

/// Random smooth trigonometric polynomial in up to three variables.
struct TrigPoly {
  struct Mode {
    int k[3];
    double phase[3];
    double amp;
  };
  std::vector<Mode> modes;

  double operator()(const divcurl::Point& x) const {
    double s = 0.0;
    for (const auto& m : modes) {
      double t = m.amp;
      for (int a = 0; a < 3; ++a) t *= std::cos(std::numbers::pi * m.k[a] * x[a] + m.phase[a]);
      s += t;
    }
    return s;
  }
};

inline TrigPoly random_trig(std::mt19937_64& rng, int dim, int max_k = 3,
                            int modes = 4) {
  std::uniform_int_distribution<int> kd(0, max_k);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> am(-1.0, 1.0);
  TrigPoly p;
  for (int i = 0; i < modes; ++i) {
    TrigPoly::Mode m{};
    for (int a = 0; a < 3; ++a) {
      m.k[a] = a < dim ? kd(rng) : 0;
      m.phase[a] = a < dim ? ph(rng) : 0.0;
    }
    m.amp = am(rng);
    p.modes.push_back(m);
  }
  return p;
}

}  // namespace oracle
