#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divcurl/field.hpp"
#include "divcurl/report.hpp"
#include "divcurl/test_function.hpp"

namespace divcurl {

/// Both backends invert the same discrete operator: the compact 5-point (2D)
/// or 7-point (3D) Laplacian with homogeneous Dirichlet data. The transform
/// backend is exact for that operator and serves as the cross-check
/// reference; CG iterates to the requested relative residual.
enum class PoissonBackend { sine_transform, conjugate_gradient };

std::string to_string(PoissonBackend backend);
PoissonBackend parse_backend(const std::string& name);

struct PoissonOptions {
  PoissonBackend backend = PoissonBackend::sine_transform;
  double tol = 1e-10;     // must lie in (0, 1e-4]
  int max_iterations = 0;  // 0 selects 10 * n
};

struct SolverStats {
  PoissonBackend backend = PoissonBackend::sine_transform;
  int iterations = 0;
  double residual = 0.0;  // ||-Lap_h u - f|| / ||f|| over interior nodes
  bool converged = true;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolverStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const SolverStats& stats() const { return stats_; }

 private:
  SolverStats stats_;
};

/// Solution of -Lap u = f in the box, u = 0 on the boundary. Boundary values of
/// the right-hand side are ignored. One stats entry per component.
template <class FieldT>
struct PoissonSolution {
  FieldT rhs;
  FieldT solution;
  std::vector<SolverStats> stats;
};

PoissonSolution<ScalarField> solve_dirichlet(const ScalarField& f,
                                             const PoissonOptions& opts = {});
PoissonSolution<VectorField> solve_dirichlet(const VectorField& f,
                                             const PoissonOptions& opts = {});

/// Relative interior residual of -Lap_h u = f; 0 when both sides vanish.
double dirichlet_residual(const ScalarField& f, const ScalarField& u);

/// H^{-1} norm realized as ||grad (-Lap)^{-1} f||_{L^2}.
struct NegNormResult {
  double value = 0.0;
  PoissonSolution<ScalarField> lifted;
};

NegNormResult neg_norm_h_minus_1(const ScalarField& f,
                                 const PoissonOptions& opts = {});

/// Tabulates, for every dictionary function phi and every component c,
/// int u^eps_c phi and int grad u^eps_c . grad phi against the same integrals
/// of the limit solution. One series per (phi, component, quantity); an empty
/// dictionary gives an empty report.
ConvergenceReport weak_w1p_limit_check(
    std::span<const PoissonSolution<VectorField>> family,
    std::span<const double> eps, const PoissonSolution<VectorField>& limit,
    std::span<const TestFunction> dictionary, double tolerance);

}  // namespace divcurl
