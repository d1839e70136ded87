#include "divcurl/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "divcurl/diffops.hpp"
#include "divcurl/kernels.hpp"
#include "divcurl/quadrature.hpp"

namespace divcurl {
namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void check_options(const PoissonOptions& opts) {
  if (!(opts.tol > 0.0 && opts.tol <= 1e-4)) {
    std::ostringstream msg;
    msg << "Poisson tolerance must lie in (0, 1e-4], got " << opts.tol;
    throw std::invalid_argument(msg.str());
  }
  if (opts.max_iterations < 0) {
    throw std::invalid_argument("Poisson iteration cap must be non-negative");
  }
}

std::vector<double> interior_rhs(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<double> r(f.values().begin(), f.values().end());
  kernels::parallel_for(r.size(), [&](std::size_t i) {
    if (g.is_boundary(i)) r[i] = 0.0;
  });
  return r;
}

std::vector<double> solve_sine_transform(const Grid& g, std::span<const double> rhs) {
  const int n = g.n();
  const int m = n - 2;
  const int dim = g.dim();
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= static_cast<std::size_t>(m);

  // Interior block, axis 1 fastest.
  double* buf = fftw_alloc_real(count);
  const auto um = static_cast<std::size_t>(m);
  for (std::size_t q = 0; q < count; ++q) {
    const int i = static_cast<int>(q % um) + 1;
    const int j = static_cast<int>((q / um) % um) + 1;
    const int k = dim == 3 ? static_cast<int>(q / (um * um)) + 1 : 0;
    buf[q] = rhs[g.flat({i, j, k})];
  }

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    int dims[3] = {m, m, m};
    fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
    plan = fftw_plan_r2r(dim, dims, buf, buf, kinds, FFTW_ESTIMATE);
  }

  fftw_execute(plan);

  // Eigenvalues of the 1D three-point Dirichlet operator.
  const double h = g.h();
  std::vector<double> lambda(um);
  for (int p = 0; p < m; ++p) {
    const double s = std::sin((p + 1) * std::numbers::pi / (2.0 * (n - 1)));
    lambda[p] = 4.0 * s * s / (h * h);
  }
  double scale = 1.0;
  for (int a = 0; a < dim; ++a) scale *= 2.0 * (m + 1);
  for (std::size_t q = 0; q < count; ++q) {
    const std::size_t i = q % um;
    const std::size_t j = (q / um) % um;
    double ev = lambda[i] + lambda[j];
    if (dim == 3) ev += lambda[q / (um * um)];
    buf[q] /= ev * scale;
  }

  fftw_execute(plan);

  std::vector<double> u(g.size(), 0.0);
  for (std::size_t q = 0; q < count; ++q) {
    const int i = static_cast<int>(q % um) + 1;
    const int j = static_cast<int>((q / um) % um) + 1;
    const int k = dim == 3 ? static_cast<int>(q / (um * um)) + 1 : 0;
    u[g.flat({i, j, k})] = buf[q];
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return u;
}

std::vector<double> solve_cg(const Grid& g, std::span<const double> rhs,
                             const PoissonOptions& opts, SolverStats& stats) {
  const std::size_t size = g.size();
  std::vector<double> x(size, 0.0);
  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> p(r);
  std::vector<double> ap(size, 0.0);

  const double fnorm = std::sqrt(kernels::interior_dot(g, rhs, rhs));
  stats.iterations = 0;
  stats.residual = 0.0;
  stats.converged = true;
  if (fnorm == 0.0) return x;

  const int cap = opts.max_iterations > 0 ? opts.max_iterations : 10 * g.n();
  double rr = kernels::interior_dot(g, r, r);
  stats.converged = false;
  while (stats.iterations < cap) {
    kernels::dirichlet_apply(g, p, ap);
    const double alpha = rr / kernels::interior_dot(g, p, ap);
    kernels::axpy(alpha, p, x);
    kernels::axpy(-alpha, ap, r);
    ++stats.iterations;
    const double rr_next = kernels::interior_dot(g, r, r);
    if (std::sqrt(rr_next) / fnorm <= opts.tol) {
      stats.converged = true;
      break;
    }
    kernels::xpby(r, rr_next / rr, p);
    rr = rr_next;
  }
  return x;
}

PoissonSolution<ScalarField> solve_component(const ScalarField& f,
                                             const PoissonOptions& opts) {
  const Grid& g = f.grid();
  const std::vector<double> rhs = interior_rhs(f);
  SolverStats stats;
  stats.backend = opts.backend;
  std::vector<double> u;
  if (opts.backend == PoissonBackend::sine_transform) {
    u = solve_sine_transform(g, rhs);
  } else {
    u = solve_cg(g, rhs, opts, stats);
  }
  ScalarField solution(g, std::move(u));
  stats.residual = dirichlet_residual(f, solution);
  if (!stats.converged) {
    std::ostringstream msg;
    msg << "conjugate gradients did not reach tol " << opts.tol << " within "
        << stats.iterations << " iterations (residual " << stats.residual << ")";
    throw SolverError(msg.str(), stats);
  }
  return {f, std::move(solution), {stats}};
}

}  // namespace

std::string to_string(PoissonBackend backend) {
  return backend == PoissonBackend::sine_transform ? "sine-transform"
                                                   : "conjugate-gradient";
}

PoissonBackend parse_backend(const std::string& name) {
  if (name == "sine-transform" || name == "dst") return PoissonBackend::sine_transform;
  if (name == "conjugate-gradient" || name == "cg")
    return PoissonBackend::conjugate_gradient;
  throw std::invalid_argument("unknown Poisson backend '" + name + "'");
}

double dirichlet_residual(const ScalarField& f, const ScalarField& u) {
  require_same_grid(f.grid(), u.grid(), "dirichlet_residual");
  const Grid& g = f.grid();
  std::vector<double> au(g.size());
  kernels::dirichlet_apply(g, u.values(), au);
  const auto fv = f.values();
  kernels::parallel_for(au.size(), [&](std::size_t i) { au[i] -= fv[i]; });
  const double rnorm = std::sqrt(kernels::interior_dot(g, au, au));
  const double fnorm = std::sqrt(kernels::interior_dot(g, fv, fv));
  if (fnorm == 0.0) return rnorm;
  return rnorm / fnorm;
}

PoissonSolution<ScalarField> solve_dirichlet(const ScalarField& f,
                                             const PoissonOptions& opts) {
  check_options(opts);
  return solve_component(f, opts);
}

PoissonSolution<VectorField> solve_dirichlet(const VectorField& f,
                                             const PoissonOptions& opts) {
  check_options(opts);
  std::vector<ScalarField> comps;
  std::vector<SolverStats> stats;
  for (const auto& c : f.components()) {
    auto s = solve_component(c, opts);
    comps.push_back(std::move(s.solution));
    stats.push_back(s.stats.front());
  }
  return {f, VectorField(std::move(comps)), std::move(stats)};
}

NegNormResult neg_norm_h_minus_1(const ScalarField& f, const PoissonOptions& opts) {
  auto lifted = solve_dirichlet(f, opts);
  const double value = lp_norm(gradient(lifted.solution), 2.0);
  return {value, std::move(lifted)};
}

ConvergenceReport weak_w1p_limit_check(
    std::span<const PoissonSolution<VectorField>> family,
    std::span<const double> eps, const PoissonSolution<VectorField>& limit,
    std::span<const TestFunction> dictionary, double tolerance) {
  if (family.size() != eps.size()) {
    throw std::invalid_argument("weak_w1p_limit_check: one solution per epsilon");
  }
  const Grid& g = limit.solution.grid();
  for (const auto& s : family) {
    require_same_grid(g, s.solution.grid(), "weak_w1p_limit_check");
  }
  ConvergenceReport report;
  report.eps.assign(eps.begin(), eps.end());
  report.tolerance = tolerance;

  for (std::size_t m = 0; m < dictionary.size(); ++m) {
    const ScalarField phi = dictionary[m].sample(g);
    const VectorField grad_phi = dictionary[m].sample_gradient(g);
    for (int c = 0; c < g.dim(); ++c) {
      auto value_of = [&](const VectorField& u) { return integrate(u[c] * phi); };
      auto energy_of = [&](const VectorField& u) {
        return integrate(dot(gradient(u[c]), grad_phi));
      };
      std::vector<double> values, energies;
      for (const auto& s : family) {
        values.push_back(value_of(s.solution));
        energies.push_back(energy_of(s.solution));
      }
      const std::string tag = "phi" + std::to_string(m) + "/u" + std::to_string(c + 1);
      report.series.push_back(make_series(tag, eps, std::move(values),
                                          value_of(limit.solution), tolerance));
      report.series.push_back(make_series(tag + "/grad", eps, std::move(energies),
                                          energy_of(limit.solution), tolerance));
    }
  }
  return report;
}

}  // namespace divcurl
