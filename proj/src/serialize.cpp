#include "divcurl/serialize.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "divcurl/field_io.hpp"

namespace divcurl {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

namespace {

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json named(const std::vector<NamedValue>& v) {
  Json o = Json::object();
  for (const auto& t : v) o[t.name] = number(t.value);
  return o;
}

Json options(const IdentityOptions& o) {
  return {{"pairing_mode", to_string(o.mode)}, {"laplacian", to_string(o.laplacian)}};
}

}  // namespace

Json to_json(const SolverStats& s) {
  return {{"backend", to_string(s.backend)},
          {"iterations", s.iterations},
          {"residual", number(s.residual)},
          {"converged", s.converged}};
}

Json to_json(const IdentityReport& r) {
  Json terms = Json::object();
  for (const auto& t : r.terms) terms[t.name] = number(t.value);
  return {{"dim", r.dim},
          {"n", r.n},
          {"options", options(r.options)},
          {"lhs", number(r.lhs)},
          {"terms", terms},
          {"rhs_sum", number(r.rhs_sum)},
          {"residual", number(r.residual)},
          {"scale", number(r.scale)},
          {"relative_residual", number(r.relative_residual)}};
}

Json to_json(const BalanceReport& r) {
  return {{"identity", r.identity},
          {"dim", r.dim},
          {"n", r.n},
          {"options", options(r.options)},
          {"lhs_terms", named(r.lhs_terms)},
          {"rhs_terms", named(r.rhs_terms)},
          {"auxiliary", named(r.auxiliary)},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"residual", number(r.residual)},
          {"scale", number(r.scale)},
          {"relative_residual", number(r.relative_residual)}};
}

Json to_json(const ConvergenceSeries& s) {
  return {{"label", s.label},       {"values", numbers(s.values)},
          {"target", number(s.target)}, {"tolerance", number(s.tolerance)},
          {"gaps", numbers(s.gaps)},    {"rate", number(s.rate)},
          {"monotone", s.monotone},     {"pass", s.pass}};
}

Json to_json(const ConvergenceReport& r) {
  Json series = Json::array();
  for (const auto& s : r.series) series.push_back(to_json(s));
  return {{"eps", numbers(r.eps)},
          {"tolerance", number(r.tolerance)},
          {"pass", r.pass()},
          {"series", series}};
}

Json to_json(const HypothesisReport& r) {
  Json curl = Json::object();
  for (std::size_t i = 0; i < r.curl_labels.size(); ++i) {
    curl[r.curl_labels[i]] = numbers(r.curl_neg_norm[i]);
  }
  Json verdicts = Json::object();
  for (std::size_t h = 0; h < r.verdicts.size(); ++h) {
    verdicts[kHypothesisNames[h]] = {{"declared", r.verdicts[h].declared},
                                     {"measured", r.verdicts[h].measured},
                                     {"agrees", r.verdicts[h].agrees()}};
  }
  return {{"family", r.family},
          {"eps", numbers(r.eps)},
          {"p", number(r.p)},
          {"q", number(r.q)},
          {"surrogate", r.surrogate},
          {"lp_norms", numbers(r.lp_norms)},
          {"lq_norms", numbers(r.lq_norms)},
          {"weak", to_json(r.weak)},
          {"div_neg_norm", numbers(r.div_neg_norm)},
          {"curl_neg_norm", curl},
          {"verdicts", verdicts}};
}

Json to_json(const Box& b, int dim) {
  Json lo = Json::array(), hi = Json::array();
  for (int a = 0; a < dim; ++a) {
    lo.push_back(number(b.lower[a]));
    hi.push_back(number(b.upper[a]));
  }
  return {{"lower", lo}, {"upper", hi}};
}

Json to_json(const ProofTraceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json su = Json::array(), sv = Json::array();
    for (const auto& s : row.stats_u) su.push_back(to_json(s));
    for (const auto& s : row.stats_v) sv.push_back(to_json(s));
    rows.push_back({{"eps", number(row.eps)},
                    {"k", row.k},
                    {"identity", to_json(row.identity)},
                    {"w22_u", number(row.w22_u)},
                    {"w22_v", number(row.w22_v)},
                    {"solver_u", su},
                    {"solver_v", sv}});
  }
  Json ext = Json::array(), lim = Json::array();
  for (const auto& s : r.extrapolated) ext.push_back(to_json(s));
  for (const auto& s : r.limit_gaps) lim.push_back(to_json(s));
  return {{"family_a", r.family_a},
          {"family_b", r.family_b},
          {"subbox", to_json(r.subbox.box, r.limit.dim)},
          {"n", r.n},
          {"rows", rows},
          {"limit", to_json(r.limit)},
          {"extrapolated_gaps", ext},
          {"extrapolated", true},
          {"limit_gaps", lim},
          {"w22_ratio_u", number(r.w22_ratio_u)},
          {"w22_ratio_v", number(r.w22_ratio_v)},
          {"balance_tol", number(r.balance_tol)},
          {"balanced", r.balanced}};
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(cells));
}

void write_csv(std::ostream& os, const std::string& kind,
               const std::vector<std::pair<std::string, std::string>>& metadata,
               const CsvTable& table) {
  os << "# divcurl-report v" << kSchemaVersion << ' ' << kind << '\n';
  for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
}

}  // namespace divcurl
