#include "divcurl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "divcurl/diffops.hpp"
#include "divcurl/field_io.hpp"
#include "divcurl/identity.hpp"
#include "divcurl/lab.hpp"
#include "divcurl/poisson.hpp"
#include "divcurl/quadrature.hpp"

namespace divcurl {

namespace {

using std::numbers::pi;

std::string fmt(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

Json criteria_json(const std::vector<Criterion>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) {
    a.push_back({{"name", c.name}, {"pass", c.pass}, {"gating", c.gating}, {"detail", c.detail}});
  }
  return a;
}

PoissonOptions poisson_options(const ExperimentConfig& cfg) {
  PoissonOptions o;
  o.backend = parse_backend(cfg.backend);
  o.tol = cfg.solver_tol;
  return o;
}

TestFunction config_bump(const ExperimentConfig& cfg) {
  return bump(cfg.dim, cfg.bump_center, cfg.bump_radius);
}

double product_sin(const Point& x, int dim, const int* m) {
  double s = 1.0;
  for (int a = 0; a < dim; ++a) s *= std::sin(m[a] * pi * x[a]);
  return s;
}

// Smooth pair with nonzero divergence and curl, used for the identity ladder.
VectorField trig_field(const Grid& g) {
  const int dim = g.dim();
  return sample(g, [dim](const Point& x) {
    const int ones[3] = {1, 1, 1};
    const double s = product_sin(x, dim, ones);
    return Point{s, s, dim == 3 ? s : 0.0};
  });
}

VectorField mixed_field(const Grid& g) {
  const int dim = g.dim();
  return sample(g, [dim](const Point& x) {
    return Point{std::sin(pi * x[0]) * std::cos(2 * pi * x[1]) + x[1] * x[1],
                 std::cos(pi * x[0] * x[1]) + std::sin(pi * x[0]),
                 dim == 3 ? std::sin(pi * x[2]) * x[0] : 0.0};
  });
}

VectorField gradient_field(const Grid& g) {
  const int dim = g.dim();
  return gradient(sample(g, [dim](const Point& x) {
    return std::sin(pi * x[0]) * std::cos(pi * x[1]) + x[0] * x[1] * x[1] +
           (dim == 3 ? std::cos(pi * x[2]) * x[0] : 0.0);
  }));
}

bool ratio_ok(double coarse, double fine) {
  const double r = coarse / fine;
  return r >= 3.0 && r <= 5.0;
}

Json ints(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

double max_curl_entry(const HypothesisReport& h, std::size_t e) {
  double m = 0.0;
  for (const auto& entry : h.curl_neg_norm) m = std::max(m, entry[e]);
  return m;
}

}  // namespace

int CommandResult::exit_code() const {
  for (const auto& c : criteria)
    if (c.gating && !c.pass) return 1;
  return 0;
}

CommandResult cmd_verify_identity(const ExperimentConfig& cfg) {
  const IdentityOptions opts{parse_pairing_mode(cfg.mode), parse_laplacian_kind(cfg.laplacian)};
  IdentityOptions other = opts;
  other.mode = opts.mode == PairingMode::by_parts ? PairingMode::direct : PairingMode::by_parts;
  const TestFunction phi = config_bump(cfg);

  CommandResult r;
  r.table.columns = {"n", "h", "lhs"};
  for (const char* t : kIdentityTerms) r.table.columns.emplace_back(t);
  for (const char* c : {"rhs_sum", "relative_residual", "prelim_relative_residual",
                        "divfree_relative_residual", "divfree_auxiliary", "mode_gap"}) {
    r.table.columns.emplace_back(c);
  }

  Json rungs = Json::array();
  std::vector<double> id_res, pre_res, red_res, mode_gap, scales;
  for (int n : cfg.n_ladder) {
    const Grid g = make_grid(cfg.dim, n);
    VectorField u = VectorField::zeros(g), v = VectorField::zeros(g);
    if (cfg.field == "trig") {
      u = trig_field(g);
      v = u;
    } else if (cfg.field == "gradient") {
      u = gradient_field(g);
      v = mixed_field(g);
    }
    const IdentityReport id = eval_identity(u, v, phi, opts);
    const IdentityReport alt = eval_identity(u, v, phi, other);
    const BalanceReport pre = eval_prelim_identity(u, v, phi, opts);
    const BalanceReport red = eval_divfree_reduction(u, v, phi, opts);
    id_res.push_back(id.relative_residual);
    pre_res.push_back(pre.relative_residual);
    red_res.push_back(red.relative_residual);
    mode_gap.push_back(std::abs(id.rhs_sum - alt.rhs_sum));
    scales.push_back(id.scale);
    rungs.push_back({{"n", n},
                     {"identity", to_json(id)},
                     {"identity_other_mode", to_json(alt)},
                     {"prelim", to_json(pre)},
                     {"divfree_reduction", to_json(red)},
                     {"mode_gap", number(mode_gap.back())}});
    std::vector<std::string> row{std::to_string(n), fmt(g.h()), fmt(id.lhs)};
    for (const auto& t : id.terms) row.push_back(fmt(t.value));
    for (double x : {id.rhs_sum, id.relative_residual, pre.relative_residual,
                     red.relative_residual, red.auxiliary[0].value, mode_gap.back()}) {
      row.push_back(fmt(x));
    }
    r.table.add_row(std::move(row));
  }

  const double floor = 1e-13;
  auto gate = [&](const std::string& name, const std::vector<double>& res) {
    Json rates = Json::array();
    for (std::size_t i = 0; i < res.size(); ++i) {
      const int n = cfg.n_ladder[i];
      const double limit = cfg.tol * std::min(1.0, std::pow(128.0 / (n - 1), 2));
      r.criteria.push_back({name + " residual at n=" + std::to_string(n), res[i] <= limit,
                            fmt(res[i]) + " <= " + fmt(limit)});
      if (i > 0 && res[i - 1] > floor && res[i] > floor) {
        rates.push_back(number(res[i - 1] / res[i]));
        r.criteria.push_back({name + " refinement ratio " + std::to_string(cfg.n_ladder[i - 1]) +
                                  "->" + std::to_string(n),
                              ratio_ok(res[i - 1], res[i]),
                              fmt(res[i - 1] / res[i]) + " in [3, 5]"});
      }
    }
    return rates;
  };
  Json ratios = {{"identity", gate("identity", id_res)},
                 {"prelim", gate("prelim", pre_res)},
                 {"divfree_reduction", gate("divfree_reduction", red_res)}};
  Json mode_ratios = Json::array();
  for (std::size_t i = 1; i < mode_gap.size(); ++i) {
    if (mode_gap[i - 1] <= 1e-12 * scales[i - 1] || mode_gap[i] <= 1e-12 * scales[i]) continue;
    mode_ratios.push_back(number(mode_gap[i - 1] / mode_gap[i]));
    r.criteria.push_back({"pairing-mode gap ratio " + std::to_string(cfg.n_ladder[i - 1]) + "->" +
                              std::to_string(cfg.n_ladder[i]),
                          ratio_ok(mode_gap[i - 1], mode_gap[i]),
                          fmt(mode_gap[i - 1] / mode_gap[i]) + " in [3, 5]"});
  }
  ratios["pairing_mode_gap"] = mode_ratios;
  r.result = {{"field", cfg.field}, {"rungs", rungs}, {"refinement_ratios", ratios}};
  return r;
}

CommandResult cmd_divcurl(const ExperimentConfig& cfg) {
  if (cfg.pair == "counterexample") {
    CommandResult r = cmd_counterexample(cfg);
    r.result["pair"] = cfg.pair;
    return r;
  }
  const Grid g = make_grid(cfg.dim, cfg.n);
  const std::vector<double> eps = schedule_from_wavenumbers(cfg.k_schedule);
  const OscillatoryFamily a = gen_divfree(parse_profile(cfg.profile_a), eps);
  const OscillatoryFamily b = gen_curlfree(parse_profile(cfg.profile_b), eps);
  const TestFunction phi = config_bump(cfg);
  LabOptions lab;
  lab.poisson = poisson_options(cfg);
  lab.weak_tol = cfg.tol;
  const auto dict = default_dictionary(cfg.dim);

  const ConvergenceReport product = product_test(a, b, phi, g, lab);
  const HypothesisReport ha = hypothesis_check(a, dict, cfg.p, g, lab);
  const HypothesisReport hb = hypothesis_check(b, dict, cfg.p, g, lab);
  const ConvergenceSeries& s = product.series.front();

  const bool hypotheses = ha.verdicts[0].measured && ha.verdicts[2].measured &&
                          hb.verdicts[1].measured && hb.verdicts[3].measured;
  const bool converged = s.pass && s.monotone;

  CommandResult r;
  r.criteria.push_back({"hypotheses (i) and (iii) for a, (ii) and (iv) for b measured", hypotheses,
                        hypotheses ? "all hold" : "at least one fails", false});
  r.criteria.push_back({"product gap decreases monotonically", s.monotone,
                        s.monotone ? "yes" : "no", hypotheses});
  r.criteria.push_back({"final product gap within tolerance", s.pass,
                        fmt(s.gaps.back()) + " <= " + fmt(s.tolerance), hypotheses});
  r.criteria.push_back({"hypotheses imply convergence", !hypotheses || converged,
                        hypotheses ? (converged ? "converged" : "did not converge")
                                   : "not predicted"});

  r.table.columns = {"k", "eps", "product", "gap", "a_lp_norm", "b_lq_norm", "a_div_hm1",
                     "b_curl_hm1"};
  for (std::size_t e = 0; e < eps.size(); ++e) {
    r.table.add_row({std::to_string(cfg.k_schedule[e]), fmt(eps[e]), fmt(s.values[e]),
                     fmt(s.gaps[e]), fmt(ha.lp_norms[e]), fmt(hb.lq_norms[e]),
                     fmt(ha.div_neg_norm[e]), fmt(max_curl_entry(hb, e))});
  }
  r.result = {{"pair", cfg.pair},
              {"k_schedule", ints(cfg.k_schedule)},
              {"family_a", a.name()},
              {"family_b", b.name()},
              {"product", to_json(product)},
              {"hypotheses_a", to_json(ha)},
              {"hypotheses_b", to_json(hb)},
              {"hypotheses_hold", hypotheses},
              {"converged", converged}};
  return r;
}

CommandResult cmd_counterexample(const ExperimentConfig& cfg) {
  const Grid g = make_grid(cfg.dim, cfg.n);
  const std::vector<double> eps = schedule_from_wavenumbers(cfg.k_schedule);
  const auto [a, b] = gen_counterexample(eps);
  const TestFunction phi = config_bump(cfg);
  LabOptions lab;
  lab.poisson = poisson_options(cfg);
  lab.weak_tol = cfg.tol;
  const auto dict = default_dictionary(cfg.dim);

  const ConvergenceReport product = product_test(a, b, phi, g, lab);
  const HypothesisReport ha = hypothesis_check(a, dict, cfg.p, g, lab);
  const HypothesisReport hb = hypothesis_check(b, dict, cfg.p, g, lab);
  const ConvergenceSeries& s = product.series.front();
  const double int_phi = integrate(phi.sample(g));
  const double final_value = s.values.back();
  const double div_ratio = ha.div_neg_norm.back() / ha.div_neg_norm.front();

  Json mismatches = Json::array();
  for (const auto* h : {&ha, &hb}) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (!h->verdicts[k].agrees()) {
        mismatches.push_back({{"family", h->family},
                              {"hypothesis", kHypothesisNames[k]},
                              {"declared", h->verdicts[k].declared},
                              {"measured", h->verdicts[k].measured}});
      }
    }
  }

  CommandResult r;
  r.criteria.push_back({"product converges to half the integral of phi",
                        std::abs(final_value - 0.5 * int_phi) <= 0.02 * 0.5 * int_phi,
                        fmt(final_value) + " vs " + fmt(0.5 * int_phi) + " within 2%"});
  r.criteria.push_back({"product stays away from the limit product 0",
                        std::abs(final_value - s.target) >= 0.4 * int_phi,
                        fmt(std::abs(final_value - s.target)) + " >= " + fmt(0.4 * int_phi)});
  r.criteria.push_back({"convergence to the limit product fails", !s.pass,
                        s.pass ? "converged" : "did not converge"});
  r.criteria.push_back({"divergence H^-1 diagnostic does not decay", div_ratio >= 0.5,
                        "final/initial = " + fmt(div_ratio) + " >= 0.5"});
  r.criteria.push_back({"hypothesis (iii) measured as failed", !ha.verdicts[2].measured,
                        ha.verdicts[2].measured ? "passed" : "failed"});
  r.criteria.push_back({"hypothesis (iv) measured as failed", !hb.verdicts[3].measured,
                        hb.verdicts[3].measured ? "passed: the family is a gradient field"
                                                : "failed",
                        false});

  r.table.columns = {"k", "eps", "product", "gap_to_limit", "half_integral_phi", "a_div_hm1",
                     "b_curl_hm1"};
  for (std::size_t e = 0; e < eps.size(); ++e) {
    r.table.add_row({std::to_string(cfg.k_schedule[e]), fmt(eps[e]), fmt(s.values[e]),
                     fmt(s.gaps[e]), fmt(0.5 * int_phi), fmt(ha.div_neg_norm[e]),
                     fmt(max_curl_entry(hb, e))});
  }
  r.result = {{"k_schedule", ints(cfg.k_schedule)},
              {"integral_phi", number(int_phi)},
              {"product", to_json(product)},
              {"hypotheses_a", to_json(ha)},
              {"hypotheses_b", to_json(hb)},
              {"declaration_mismatches", mismatches}};
  return r;
}

CommandResult cmd_trace(const ExperimentConfig& cfg) {
  const Grid g = make_grid(cfg.dim, cfg.n);
  const std::vector<double> eps = schedule_from_wavenumbers(cfg.k_schedule);
  const TestFunction phi = config_bump(cfg);
  LabOptions lab;
  lab.poisson = poisson_options(cfg);
  lab.weak_tol = cfg.weak_tol;
  lab.balance_tol = cfg.tol;

  const bool demo = cfg.pair == "demo";
  const auto cx = gen_counterexample(eps);
  const OscillatoryFamily a = demo ? gen_divfree(parse_profile(cfg.profile_a), eps) : cx.first;
  const OscillatoryFamily b = demo ? gen_curlfree(parse_profile(cfg.profile_b), eps) : cx.second;
  const SubBox box = SubBox::around(phi);
  const ProofTraceReport t = proof_trace(a, b, phi, box, g, lab);

  CommandResult r;
  double worst = 0.0;
  for (const auto& row : t.rows) worst = std::max(worst, row.identity.relative_residual);
  r.criteria.push_back({"every row balances", t.balanced,
                        "max relative residual " + fmt(worst) + " <= " + fmt(cfg.tol)});
  r.criteria.push_back({"sub-box second-difference norms vary at most 2x",
                        t.w22_ratio_u <= 2.0 && t.w22_ratio_v <= 2.0,
                        "u " + fmt(t.w22_ratio_u) + ", v " + fmt(t.w22_ratio_v), false});
  for (const auto& s : t.limit_gaps) {
    r.criteria.push_back({"term " + s.label + " converges to its limit value", s.pass,
                          "final gap " + fmt(s.gaps.back()) + " <= " + fmt(s.tolerance), false});
  }

  r.table.columns = {"k", "eps", "lhs"};
  for (const char* name : kIdentityTerms) r.table.columns.emplace_back(name);
  for (const char* c : {"rhs_sum", "relative_residual", "w22_u", "w22_v"}) r.table.columns.emplace_back(c);
  auto row_of = [&](const std::string& k, double e, const IdentityReport& id, double wu, double wv) {
    std::vector<std::string> row{k, fmt(e), fmt(id.lhs)};
    for (const auto& term : id.terms) row.push_back(fmt(term.value));
    for (double x : {id.rhs_sum, id.relative_residual, wu, wv}) row.push_back(fmt(x));
    r.table.add_row(std::move(row));
  };
  for (const auto& row : t.rows) row_of(std::to_string(row.k), row.eps, row.identity, row.w22_u, row.w22_v);
  row_of("limit", 0.0, t.limit, NAN, NAN);

  r.result = {{"pair", cfg.pair}, {"trace", to_json(t)}};
  return r;
}

CommandResult cmd_negnorm(const ExperimentConfig& cfg) {
  const Grid g = make_grid(cfg.dim, cfg.n);
  const PoissonOptions opts = poisson_options(cfg);
  CommandResult r;
  r.table.columns = {"indices", "value", "target", "relative_error", "iterations"};
  Json entries = Json::array();
  for (const auto& m : cfg.eigen) {
    const ScalarField f = sample(g, [&](const Point& x) { return product_sin(x, cfg.dim, m.data()); });
    const NegNormResult nn = neg_norm_h_minus_1(f, opts);
    double sum = 0.0;
    for (int k : m) sum += k * k;
    const double target = std::pow(0.5, 0.5 * cfg.dim) / (pi * std::sqrt(sum));
    const double rel = std::abs(nn.value - target) / target;
    std::string label;
    for (std::size_t i = 0; i < m.size(); ++i) label += (i ? "," : "") + std::to_string(m[i]);
    r.criteria.push_back({"eigenfunction (" + label + ")", rel <= cfg.tol,
                          fmt(nn.value) + " vs " + fmt(target) + ", relative error " + fmt(rel)});
    r.table.add_row({"\"" + label + "\"", fmt(nn.value), fmt(target), fmt(rel),
                     std::to_string(nn.lifted.stats.front().iterations)});
    entries.push_back({{"indices", ints(m)},
                       {"value", number(nn.value)},
                       {"target", number(target)},
                       {"relative_error", number(rel)},
                       {"solver", to_json(nn.lifted.stats.front())}});
  }
  r.result = {{"n", cfg.n}, {"eigenfunctions", entries}};
  return r;
}

CommandResult cmd_poisson_mms(const ExperimentConfig& cfg) {
  const PoissonOptions opts = poisson_options(cfg);
  const int dim = cfg.dim;
  auto poly = [dim](const Point& x) {
    double u = 1.0;
    for (int a = 0; a < dim; ++a) u *= x[a] * (1 - x[a]);
    return u;
  };
  auto poly_rhs = [dim](const Point& x) {
    double f = 0.0;
    for (int a = 0; a < dim; ++a) {
      double t = 2.0;
      for (int b = 0; b < dim; ++b)
        if (b != a) t *= x[b] * (1 - x[b]);
      f += t;
    }
    return f;
  };
  const int modes[3] = {1, 2, 1};
  const double lambda = pi * pi * (dim == 3 ? 6.0 : 5.0);
  auto trig = [&](const Point& x) { return product_sin(x, dim, modes); };

  CommandResult r;
  r.table.columns = {"n", "h", "poly_l2_error", "poly_nodal_max_error", "trig_l2_error",
                     "iterations", "residual"};
  std::vector<double> hs, poly_err, trig_err;
  Json rungs = Json::array();
  for (int n : cfg.n_ladder) {
    const Grid g = make_grid(dim, n);
    const auto sp = solve_dirichlet(sample(g, poly_rhs), opts);
    const ScalarField exact_trig = sample(g, trig);
    const auto st = solve_dirichlet(lambda * exact_trig, opts);
    const double e_poly = interpolated_l2_error(sp.solution, poly);
    double nodal = 0.0;
    const ScalarField exact_poly = sample(g, poly);
    for (std::size_t i = 0; i < g.size(); ++i) nodal = std::max(nodal, std::abs(sp.solution[i] - exact_poly[i]));
    const double e_trig = lp_norm(st.solution - exact_trig, 2.0);
    hs.push_back(g.h());
    poly_err.push_back(e_poly);
    trig_err.push_back(e_trig);
    r.table.add_row({std::to_string(n), fmt(g.h()), fmt(e_poly), fmt(nodal), fmt(e_trig),
                     std::to_string(sp.stats.front().iterations), fmt(sp.stats.front().residual)});
    rungs.push_back({{"n", n},
                     {"h", number(g.h())},
                     {"poly_l2_error", number(e_poly)},
                     {"poly_nodal_max_error", number(nodal)},
                     {"trig_l2_error", number(e_trig)},
                     {"solver_poly", to_json(sp.stats.front())},
                     {"solver_trig", to_json(st.stats.front())}});
  }
  const double rate_poly = fit_loglog_slope(hs, poly_err);
  const double rate_trig = fit_loglog_slope(hs, trig_err);
  const std::string window = " in [" + fmt(2.0 - cfg.tol) + ", " + fmt(2.0 + cfg.tol) + "]";
  r.criteria.push_back({"polynomial solution L2 order", std::abs(rate_poly - 2.0) <= cfg.tol,
                        fmt(rate_poly) + window});
  r.criteria.push_back({"trigonometric solution L2 order", std::abs(rate_trig - 2.0) <= cfg.tol,
                        fmt(rate_trig) + window});
  r.result = {{"n_ladder", ints(cfg.n_ladder)},
              {"rungs", rungs},
              {"rate_poly", number(rate_poly)},
              {"rate_trig", number(rate_trig)},
              {"poly_error_norm", "L2 of the bilinear reconstruction"},
              {"trig_error_norm", "nodal L2 (trapezoid)"}};
  return r;
}

CommandResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.command == "verify-identity") return cmd_verify_identity(cfg);
  if (cfg.command == "divcurl") return cmd_divcurl(cfg);
  if (cfg.command == "counterexample") return cmd_counterexample(cfg);
  if (cfg.command == "trace") return cmd_trace(cfg);
  if (cfg.command == "negnorm") return cmd_negnorm(cfg);
  if (cfg.command == "poisson-mms") return cmd_poisson_mms(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

Json report_json(const ExperimentConfig& cfg, const CommandResult& r) {
  Json config = Json::object();
  for (const auto& [k, v] : echo(cfg)) config[k] = v;
  return {{"schema_version", kSchemaVersion},
          {"command", cfg.command},
          {"config", config},
          {"result", r.result},
          {"criteria", criteria_json(r.criteria)},
          {"pass", r.exit_code() == 0}};
}

int run_command(const std::string& command, const ConfigEntries& file, const ConfigEntries& flags,
                std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CommandResult result;
  try {
    cfg = resolve_config(command, file, flags);
    result = run_experiment(cfg);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  const std::string path = output_path(cfg);
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream os(path);
  if (!os) {
    err << "config error: cannot write report to '" << path << "'\n";
    return 2;
  }
  if (cfg.format == "csv") {
    write_csv(os, cfg.command, echo(cfg), result.table);
  } else {
    os << report_json(cfg, result).dump(2) << '\n';
  }
  for (const auto& c : result.criteria) {
    out << (c.pass ? "PASS " : "FAIL ") << (c.gating ? "" : "(info) ") << c.name << ": " << c.detail
        << '\n';
  }
  out << cfg.command << ": " << (result.exit_code() == 0 ? "ok" : "criterion failed") << " -> "
      << path << '\n';
  return result.exit_code();
}

}  // namespace divcurl
