#include "divcurl/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "divcurl/diffops.hpp"

namespace divcurl {

namespace {

using std::numbers::pi;

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("profile '" + spec + "': bad number '" + text + "'");
  }
  return v;
}

bool bounded(std::span<const double> norms) {
  if (norms.empty()) return true;
  const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
  return *hi <= 2.0 * *lo;
}

void require_same_schedule(const OscillatoryFamily& a, const OscillatoryFamily& b) {
  if (a.eps() != b.eps()) {
    throw std::invalid_argument("families " + a.name() + " and " + b.name() +
                                " use different epsilon schedules");
  }
}

int max_wavenumber(const OscillatoryFamily& f) {
  return f.wavenumbers().empty() ? 0 : f.wavenumbers().back();
}

double second_difference_norm(const VectorField& u, const Box& box) {
  const int dim = u.dim();
  ScalarField acc(u.grid());
  for (const auto& c : u.components()) {
    for (int a = 0; a < dim; ++a) {
      const ScalarField pure = second_partial(c, a);
      acc = acc + pure * pure;
      for (int b = a + 1; b < dim; ++b) {
        const ScalarField mixed = partial(partial(c, a), b);
        acc = acc + 2.0 * (mixed * mixed);
      }
    }
  }
  return std::sqrt(integrate(acc, box));
}

// Richardson extrapolation to eps = 0 of the last two values, first order.
double extrapolate(std::span<const double> eps, std::span<const double> values) {
  const std::size_t m = values.size();
  if (m < 2) return m ? values.back() : 0.0;
  const double r = eps[m - 2] / eps[m - 1];
  return values[m - 1] + (values[m - 1] - values[m - 2]) / (r - 1.0);
}

}  // namespace

Profile parse_profile(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const double arg = has_arg ? parse_number(spec.substr(colon + 1), spec) : 1.0;
  if ((name == "sin" || name == "cos") && has_arg) {
    throw std::invalid_argument("profile '" + spec + "' takes no argument");
  }
  if (name == "sin") return {spec, [](double y) { return std::sin(2 * pi * y); }, 0.0};
  if (name == "cos") return {spec, [](double y) { return std::cos(2 * pi * y); }, 0.0};
  if (name == "affine+sin") {
    return {spec, [arg](double y) { return arg + std::sin(2 * pi * y); }, arg};
  }
  if (name == "affine+cos") {
    return {spec, [arg](double y) { return arg + std::cos(2 * pi * y); }, arg};
  }
  if (name == "constant") return {spec, [arg](double) { return arg; }, arg, true};
  throw std::invalid_argument("unknown profile '" + spec +
                              "' (sin, cos, affine+sin[:c], affine+cos[:c], constant[:c])");
}

std::vector<int> commensurate_wavenumbers(std::span<const double> eps) {
  if (eps.empty()) throw std::invalid_argument("epsilon schedule is empty");
  std::vector<int> ks;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = eps[i];
    if (!(e > 0.0 && e < 1.0)) {
      throw std::invalid_argument("epsilon values must lie in (0, 1)");
    }
    if (i > 0 && !(e < eps[i - 1])) {
      throw std::invalid_argument("epsilon schedule must be strictly decreasing");
    }
    const double k = 1.0 / (2.0 * pi * e);
    const double rounded = std::round(k);
    if (rounded < 1.0 || std::abs(k - rounded) > 1e-9 * k) {
      std::ostringstream msg;
      msg << "epsilon " << e << " is not commensurate with the box: 1/(2 pi eps) = " << k
          << " is not an integer";
      throw std::invalid_argument(msg.str());
    }
    ks.push_back(static_cast<int>(rounded));
  }
  return ks;
}

std::vector<double> schedule_from_wavenumbers(std::span<const int> ks) {
  std::vector<double> eps;
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("wavenumbers must be positive");
    eps.push_back(1.0 / (2.0 * pi * k));
  }
  commensurate_wavenumbers(eps);
  return eps;
}

void require_resolution(const Grid& grid, int k_max) {
  const int required = kPointsPerPeriod * k_max + 1;
  if (grid.n() < required) {
    std::ostringstream msg;
    msg << "grid n = " << grid.n() << " under-resolves wavenumber " << k_max << ": need n >= "
        << required << " (" << kPointsPerPeriod << " intervals per period)";
    throw ResolutionError(msg.str(), required);
  }
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::divfree: return "div-free";
    case FamilyKind::curlfree: return "curl-free";
    case FamilyKind::counterexample: return "counterexample";
    case FamilyKind::custom: return "custom";
  }
  return "custom";
}

OscillatoryFamily::OscillatoryFamily(FamilyKind kind, std::string name, std::vector<double> eps,
                                     Realize realize, VectorFunction limit,
                                     HypothesisStatus declared)
    : kind_(kind),
      name_(std::move(name)),
      eps_(std::move(eps)),
      ks_(commensurate_wavenumbers(eps_)),
      realize_(std::move(realize)),
      limit_(std::move(limit)),
      declared_(declared) {}

VectorField OscillatoryFamily::realize(const Grid& grid, std::size_t index) const {
  return realize_(grid, ks_.at(index));
}

VectorField OscillatoryFamily::limit(const Grid& grid) const { return sample(grid, limit_); }

OscillatoryFamily gen_divfree(const Profile& f, std::span<const double> eps) {
  const auto fn = f.f;
  const double mean = f.mean;
  return OscillatoryFamily(
      FamilyKind::divfree, "div-free(" + f.name + ")", {eps.begin(), eps.end()},
      [fn](const Grid& g, int k) {
        return sample(g, [&](const Point& x) { return Point{fn(k * x[1]), 0.0, 0.0}; });
      },
      [mean](const Point&) { return Point{mean, 0.0, 0.0}; },
      {true, true, true, f.constant});
}

OscillatoryFamily gen_curlfree(const Profile& g, std::span<const double> eps) {
  const auto fn = g.f;
  const double mean = g.mean;
  return OscillatoryFamily(
      FamilyKind::curlfree, "curl-free(" + g.name + ")", {eps.begin(), eps.end()},
      [fn](const Grid& grid, int k) {
        return sample(grid, [&](const Point& x) { return Point{fn(k * x[0]), 0.0, 0.0}; });
      },
      [mean](const Point&) { return Point{mean, 0.0, 0.0}; },
      {true, true, g.constant, true});
}

std::pair<OscillatoryFamily, OscillatoryFamily> gen_counterexample(std::span<const double> eps) {
  auto make = [&](const std::string& name) {
    return OscillatoryFamily(
        FamilyKind::counterexample, name, {eps.begin(), eps.end()},
        [](const Grid& g, int k) {
          return sample(g, [k](const Point& x) {
            return Point{std::sin(2 * pi * k * x[0]), 0.0, 0.0};
          });
        },
        [](const Point&) { return Point{0.0, 0.0, 0.0}; }, {true, true, false, false});
  };
  return {make("counterexample-a"), make("counterexample-b")};
}

SubBox SubBox::around(const TestFunction& phi, double margin) {
  SubBox s;
  for (int a = 0; a < phi.dim(); ++a) {
    s.box.lower[a] = phi.center()[a] - phi.radius() - margin;
    s.box.upper[a] = phi.center()[a] + phi.radius() + margin;
  }
  s.validate(phi);
  return s;
}

void SubBox::validate(int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (!(box.lower[a] < box.upper[a])) {
      throw std::invalid_argument("sub-box has an empty extent along axis " +
                                  std::to_string(a + 1));
    }
    if (!(box.lower[a] > 0.0 && box.upper[a] < 1.0)) {
      throw std::invalid_argument("sub-box must keep a positive distance to the faces of the box");
    }
  }
}

void SubBox::validate(const TestFunction& phi) const {
  validate(phi.dim());
  for (int a = 0; a < phi.dim(); ++a) {
    if (!(phi.center()[a] - phi.radius() > box.lower[a] &&
          phi.center()[a] + phi.radius() < box.upper[a])) {
      throw SupportMarginError("support of phi is not inside the sub-box with a positive margin");
    }
  }
}

std::vector<TestFunction> default_dictionary(int dim) {
  const double z = 0.5;
  return {bump(dim, {0.5, 0.5, z}, 0.3), bump(dim, {0.3, 0.35, z}, 0.2),
          bump(dim, {0.7, 0.4, z}, 0.25), bump(dim, {0.4, 0.7, z}, 0.2),
          bump(dim, {0.65, 0.7, z}, 0.15)};
}

ConvergenceReport product_test(const OscillatoryFamily& a, const OscillatoryFamily& b,
                               const TestFunction& phi, const Grid& grid,
                               const LabOptions& opts) {
  require_same_schedule(a, b);
  require_resolution(grid, max_wavenumber(a));
  const ScalarField p = phi.sample(grid);
  std::vector<double> values;
  for (std::size_t i = 0; i < a.size(); ++i) {
    values.push_back(integrate(dot(a.realize(grid, i), b.realize(grid, i)) * p));
  }
  const double target = integrate(dot(a.limit(grid), b.limit(grid)) * p);
  const double scale = integrate(abs(p));

  ConvergenceReport r;
  r.eps = a.eps();
  r.tolerance = opts.weak_tol;
  r.series.push_back(make_series("product", r.eps, std::move(values), target,
                                 opts.weak_tol * scale));
  return r;
}

bool compact_decay(std::span<const double> values) {
  if (values.empty()) return true;
  if (values.back() <= 1e-10) return true;
  return values.back() / values.front() < 0.5;
}

HypothesisReport hypothesis_check(const OscillatoryFamily& family,
                                  std::span<const TestFunction> dictionary, double p,
                                  const Grid& grid, const LabOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent p must be finite and greater than 1");
  }
  require_resolution(grid, max_wavenumber(family));
  const int dim = grid.dim();

  HypothesisReport r;
  r.family = family.name();
  r.eps = family.eps();
  r.p = p;
  r.q = p / (p - 1.0);
  r.surrogate = p != 2.0;
  r.weak.eps = r.eps;
  r.weak.tolerance = opts.weak_tol;

  const VectorField lim = family.limit(grid);
  const ScalarField div_lim = divergence(lim);
  const SkewMatrixField curl_lim = curl_matrix(lim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      r.curl_labels.push_back("C" + std::to_string(i + 1) + std::to_string(j + 1));
      r.curl_neg_norm.emplace_back();
    }
  }

  std::vector<std::vector<double>> weak_values(dictionary.size() * dim);
  std::vector<ScalarField> phis;
  for (const auto& t : dictionary) phis.push_back(t.sample(grid));

  for (std::size_t e = 0; e < family.size(); ++e) {
    const VectorField a = family.realize(grid, e);
    r.lp_norms.push_back(lp_norm(a, r.p));
    r.lq_norms.push_back(lp_norm(a, r.q));
    for (std::size_t m = 0; m < phis.size(); ++m)
      for (int c = 0; c < dim; ++c) weak_values[m * dim + c].push_back(integrate(a[c] * phis[m]));
    r.div_neg_norm.push_back(neg_norm_h_minus_1(divergence(a) - div_lim, opts.poisson).value);
    const SkewMatrixField curl = curl_matrix(a);
    std::size_t entry = 0;
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        r.curl_neg_norm[entry++].push_back(
            neg_norm_h_minus_1(curl.entry(i, j) - curl_lim.entry(i, j), opts.poisson).value);
      }
    }
  }
  for (std::size_t m = 0; m < phis.size(); ++m) {
    const double scale = integrate(abs(phis[m]));
    for (int c = 0; c < dim; ++c) {
      r.weak.series.push_back(make_series(
          "phi" + std::to_string(m) + "/a" + std::to_string(c + 1), r.eps,
          std::move(weak_values[m * dim + c]), integrate(lim[c] * phis[m]),
          opts.weak_tol * scale));
    }
  }

  const bool weak = r.weak.pass();
  bool curl_ok = true;
  for (const auto& v : r.curl_neg_norm) curl_ok = curl_ok && compact_decay(v);
  const bool measured[4] = {bounded(r.lp_norms) && weak, bounded(r.lq_norms) && weak,
                            compact_decay(r.div_neg_norm), curl_ok};
  for (int h = 0; h < 4; ++h) r.verdicts[h] = {family.declared()[h], measured[h]};
  return r;
}

ProofTraceReport proof_trace(const OscillatoryFamily& a, const OscillatoryFamily& b,
                             const TestFunction& phi, const SubBox& subbox, const Grid& grid,
                             const LabOptions& opts) {
  require_same_schedule(a, b);
  subbox.validate(phi);
  require_resolution(grid, max_wavenumber(a));

  ProofTraceReport r;
  r.family_a = a.name();
  r.family_b = b.name();
  r.subbox = subbox;
  r.n = grid.n();
  r.balance_tol = opts.balance_tol;

  auto evaluate = [&](const VectorField& fa, const VectorField& fb, ProofTraceRow& row) {
    auto su = solve_dirichlet(fa, opts.poisson);
    auto sv = solve_dirichlet(fb, opts.poisson);
    const VectorField lap_u = -fa;
    const VectorField lap_v = -fb;
    row.identity = eval_identity({lap_u, lap_v, su.solution, sv.solution}, phi,
                                 PairingMode::by_parts, subbox.box);
    row.w22_u = second_difference_norm(su.solution, subbox.box);
    row.w22_v = second_difference_norm(sv.solution, subbox.box);
    row.stats_u = std::move(su.stats);
    row.stats_v = std::move(sv.stats);
  };

  for (std::size_t e = 0; e < a.size(); ++e) {
    ProofTraceRow row;
    row.eps = a.eps()[e];
    row.k = a.wavenumbers()[e];
    evaluate(a.realize(grid, e), b.realize(grid, e), row);
    r.rows.push_back(std::move(row));
  }
  ProofTraceRow limit_row;
  evaluate(a.limit(grid), b.limit(grid), limit_row);
  r.limit = limit_row.identity;

  double scale = r.limit.scale;
  for (const auto& row : r.rows) scale = std::max(scale, row.identity.scale);
  const double tol = opts.weak_tol * scale;
  const double floor = 1e-10 * scale;
  const std::vector<double>& eps = a.eps();
  for (int q = 0; q < 7; ++q) {
    std::vector<double> values;
    for (const auto& row : r.rows) {
      values.push_back(q == 0 ? row.identity.lhs : row.identity.terms[q - 1].value);
    }
    const std::string label = q == 0 ? "lhs" : kIdentityTerms[q - 1];
    const double limit_value = q == 0 ? r.limit.lhs : r.limit.terms[q - 1].value;
    r.extrapolated.push_back(
        make_series(label, eps, values, extrapolate(eps, values), tol, floor));
    r.limit_gaps.push_back(make_series(label, eps, std::move(values), limit_value, tol, floor));
  }

  auto ratio = [&](double ProofTraceRow::*member) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : r.rows) {
      lo = std::min(lo, row.*member);
      hi = std::max(hi, row.*member);
    }
    return r.rows.empty() ? 1.0 : (lo > 0.0 ? hi / lo : (hi > 0.0 ? INFINITY : 1.0));
  };
  r.w22_ratio_u = ratio(&ProofTraceRow::w22_u);
  r.w22_ratio_v = ratio(&ProofTraceRow::w22_v);
  r.balanced = std::all_of(r.rows.begin(), r.rows.end(), [&](const ProofTraceRow& row) {
    return row.identity.relative_residual <= opts.balance_tol;
  });
  return r;
}

}  // namespace divcurl
