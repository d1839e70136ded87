#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divcurl/field.hpp"
#include "divcurl/identity.hpp"
#include "divcurl/poisson.hpp"
#include "divcurl/quadrature.hpp"
#include "divcurl/report.hpp"
#include "divcurl/test_function.hpp"

namespace divcurl {

/// 1-periodic profile with its declared mean.
struct Profile {
  std::string name;
  std::function<double(double)> f;
  double mean = 0.0;
  bool constant = false;
};

/// sin, cos, affine+sin[:offset], affine+cos[:offset] (offset defaults to 1),
/// constant[:value] (defaults to 1). Profiles are 1-periodic: sin(2 pi y) etc.
Profile parse_profile(const std::string& spec);

/// Raised when the grid cannot resolve the finest oscillation.
class ResolutionError : public std::invalid_argument {
 public:
  ResolutionError(const std::string& what, int required_n)
      : std::invalid_argument(what), required_n_(required_n) {}
  int required_n() const { return required_n_; }

 private:
  int required_n_;
};

/// Grid intervals demanded per oscillation period.
inline constexpr int kPointsPerPeriod = 16;

/// Wavenumbers k = 1 / (2 pi eps) of a schedule. Throws unless eps is strictly
/// decreasing in (0, 1) and every k is an integer (to 1e-9 relative).
std::vector<int> commensurate_wavenumbers(std::span<const double> eps);
std::vector<double> schedule_from_wavenumbers(std::span<const int> ks);

/// Throws ResolutionError naming the smallest admissible n.
void require_resolution(const Grid& grid, int k_max);

enum class FamilyKind { divfree, curlfree, counterexample, custom };
std::string to_string(FamilyKind kind);

/// Declared status of the four hypotheses: weak convergence in L^p and L^q,
/// compactness of the divergence and of the curl.
using HypothesisStatus = std::array<bool, 4>;
inline constexpr std::array<const char*, 4> kHypothesisNames = {"i", "ii", "iii", "iv"};

class OscillatoryFamily {
 public:
  /// Realization at wavenumber k on a grid.
  using Realize = std::function<VectorField(const Grid&, int k)>;

  OscillatoryFamily(FamilyKind kind, std::string name, std::vector<double> eps,
                    Realize realize, VectorFunction limit, HypothesisStatus declared);

  FamilyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& eps() const { return eps_; }
  const std::vector<int>& wavenumbers() const { return ks_; }
  std::size_t size() const { return eps_.size(); }
  const HypothesisStatus& declared() const { return declared_; }

  VectorField realize(const Grid& grid, std::size_t index) const;
  VectorField limit(const Grid& grid) const;
  Point limit_at(const Point& x) const { return limit_(x); }

 private:
  FamilyKind kind_;
  std::string name_;
  std::vector<double> eps_;
  std::vector<int> ks_;
  Realize realize_;
  VectorFunction limit_;
  HypothesisStatus declared_;
};

/// a(x) = (f(k x_2), 0[, 0]); divergence-free by construction.
OscillatoryFamily gen_divfree(const Profile& f, std::span<const double> eps);
/// b(x) = (g(k x_1), 0[, 0]); curl-free by construction.
OscillatoryFamily gen_curlfree(const Profile& g, std::span<const double> eps);
/// a = b = (sin(2 pi k x_1), 0[, 0]) with weak limit 0.
std::pair<OscillatoryFamily, OscillatoryFamily> gen_counterexample(std::span<const double> eps);

/// Axis-aligned box strictly inside the unit box.
struct SubBox {
  Box box;

  /// Smallest cube-like box containing supp phi with `margin` to spare.
  static SubBox around(const TestFunction& phi, double margin = 0.05);

  /// Throws unless lower < upper, the box keeps a positive distance to every
  /// face, and contains supp phi with a positive margin.
  void validate(const TestFunction& phi) const;
  void validate(int dim) const;
};

/// Five bumps of varied centres and radii.
std::vector<TestFunction> default_dictionary(int dim = 2);

struct LabOptions {
  PoissonOptions poisson;
  double weak_tol = 1e-2;     // relative to the integral of |phi|
  double balance_tol = 1e-3;  // relative residual of each trace row
};

/// Per-eps integral of phi a.b against the same quadrature of the declared
/// limits; tolerance relative to the integral of |phi|.
ConvergenceReport product_test(const OscillatoryFamily& a, const OscillatoryFamily& b,
                               const TestFunction& phi, const Grid& grid,
                               const LabOptions& opts = {});

struct HypothesisVerdict {
  bool declared = true;
  bool measured = true;
  bool agrees() const { return declared == measured; }
};

struct HypothesisReport {
  std::string family;
  std::vector<double> eps;
  double p = 2.0;
  double q = 2.0;
  bool surrogate = false;  // the H^-1 diagnostics stand in for p != 2
  std::vector<double> lp_norms;
  std::vector<double> lq_norms;
  ConvergenceReport weak;                 // dictionary gaps, targets from the limit
  std::vector<double> div_neg_norm;       // ||D(a^eps - a)||_{H^-1} per eps
  std::vector<std::string> curl_labels;   // "C12", "C13", "C23"
  std::vector<std::vector<double>> curl_neg_norm;  // per entry, per eps
  std::array<HypothesisVerdict, 4> verdicts;
};

/// Decay verdict used for the compactness diagnostics.
bool compact_decay(std::span<const double> values);

HypothesisReport hypothesis_check(const OscillatoryFamily& family,
                                  std::span<const TestFunction> dictionary, double p,
                                  const Grid& grid, const LabOptions& opts = {});

struct ProofTraceRow {
  double eps = 0.0;
  int k = 0;
  IdentityReport identity;  // lhs is the integral of phi a.b
  double w22_u = 0.0;       // L^2 norm over the sub-box of all second differences
  double w22_v = 0.0;
  std::vector<SolverStats> stats_u;
  std::vector<SolverStats> stats_v;
};

struct ProofTraceReport {
  std::string family_a;
  std::string family_b;
  SubBox subbox;
  int n = 0;
  std::vector<ProofTraceRow> rows;
  IdentityReport limit;  // the same terms on the limit data
  /// One series per quantity (lhs, then the six terms), gaps to the
  /// Richardson extrapolation over the schedule (first order in eps).
  std::vector<ConvergenceSeries> extrapolated;
  /// Same quantities against the limit data.
  std::vector<ConvergenceSeries> limit_gaps;
  double w22_ratio_u = 0.0;  // max / min across the schedule
  double w22_ratio_v = 0.0;
  double balance_tol = 0.0;
  bool balanced = false;  // every row within balance_tol
};

ProofTraceReport proof_trace(const OscillatoryFamily& a, const OscillatoryFamily& b,
                             const TestFunction& phi, const SubBox& subbox,
                             const Grid& grid, const LabOptions& opts = {});

}  // namespace divcurl
