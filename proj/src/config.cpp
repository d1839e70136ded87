#include "divcurl/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "divcurl/field_io.hpp"
#include "divcurl/identity.hpp"
#include "divcurl/lab.hpp"
#include "divcurl/poisson.hpp"
#include "divcurl/test_function.hpp"

namespace divcurl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return x;
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split(v, ',')) out.push_back(to_int(key, item));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string join(const std::vector<int>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

bool ladder_command(const std::string& c) { return c == "verify-identity" || c == "poisson-mms"; }

bool schedule_command(const std::string& c) {
  return c == "divcurl" || c == "counterexample" || c == "trace";
}

std::vector<int> halving_ladder(int n) {
  std::vector<int> ladder{n};
  while (ladder.size() < 3 && (ladder.front() - 1) % 2 == 0 && (ladder.front() - 1) / 2 + 1 >= 9) {
    ladder.insert(ladder.begin(), (ladder.front() - 1) / 2 + 1);
  }
  return ladder;
}

ExperimentConfig defaults_for(const std::string& command) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  ExperimentConfig c;
  c.command = command;
  if (command == "verify-identity") {
    c.n_ladder = {65, 129, 257};
    c.tol = 1e-3;
  } else if (command == "poisson-mms") {
    c.n_ladder = {33, 65, 129};
    c.tol = 0.2;
  } else if (command == "negnorm") {
    c.n = 129;
    c.tol = 1e-2;
  } else if (command == "trace") {
    c.tol = 1e-3;
  } else {
    c.tol = 1e-2;
  }
  if (!c.n_ladder.empty()) c.n = c.n_ladder.back();
  return c;
}

void apply(ExperimentConfig& c, const std::string& key, const std::string& v, bool& q_set) {
  if (key == "command") {
    if (v != c.command) throw ConfigError("config is for command '" + v + "', running '" + c.command + "'");
  } else if (key == "dim") {
    c.dim = to_int(key, v);
  } else if (key == "n") {
    c.n = to_int(key, v);
    if (ladder_command(c.command)) c.n_ladder = halving_ladder(c.n);
  } else if (key == "n-ladder") {
    c.n_ladder = to_ints(key, v);
    c.n = c.n_ladder.back();
  } else if (key == "n-a") {
    c.n_a = to_int(key, v);
  } else if (key == "n-b") {
    c.n_b = to_int(key, v);
  } else if (key == "k-schedule") {
    c.k_schedule = to_ints(key, v);
  } else if (key == "profile-a") {
    c.profile_a = v;
  } else if (key == "profile-b") {
    c.profile_b = v;
  } else if (key == "field") {
    c.field = v;
  } else if (key == "pair") {
    c.pair = v;
  } else if (key == "p") {
    c.p = to_double(key, v);
  } else if (key == "q") {
    c.q = to_double(key, v);
    q_set = true;
  } else if (key == "bump-center") {
    const auto parts = split(v, ',');
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("bump-center: expected 2 or 3 coordinates");
    c.bump_center = {0.5, 0.5, 0.5};
    for (std::size_t i = 0; i < parts.size(); ++i) c.bump_center[i] = to_double(key, parts[i]);
  } else if (key == "bump-radius") {
    c.bump_radius = to_double(key, v);
  } else if (key == "tol") {
    c.tol = to_double(key, v);
  } else if (key == "weak-tol") {
    c.weak_tol = to_double(key, v);
  } else if (key == "solver-tol") {
    c.solver_tol = to_double(key, v);
  } else if (key == "backend") {
    c.backend = v;
  } else if (key == "mode") {
    c.mode = v;
  } else if (key == "laplacian") {
    c.laplacian = v;
  } else if (key == "eigen") {
    c.eigen.clear();
    for (const auto& item : split(v, ';')) c.eigen.push_back(to_ints(key, item));
  } else if (key == "out") {
    c.out = v;
  } else if (key == "format") {
    c.format = v;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void validate(ExperimentConfig& c, bool q_set) {
  if (c.dim != 2 && c.dim != 3) throw ConfigError("dim must be 2 or 3");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
  if (c.n < 8) throw ConfigError("n must be at least 8");
  for (int n : c.n_ladder) {
    if (n < 8) throw ConfigError("n-ladder entries must be at least 8");
  }
  for (std::size_t i = 1; i < c.n_ladder.size(); ++i) {
    if (c.n_ladder[i] <= c.n_ladder[i - 1]) throw ConfigError("n-ladder must be increasing");
  }
  if (!(c.p > 1.0)) throw ConfigError("p must be greater than 1");
  if (!q_set) c.q = c.p / (c.p - 1.0);
  if (!(c.q > 1.0) || std::abs(1.0 / c.p + 1.0 / c.q - 1.0) > 1e-12) {
    throw ConfigError("p and q must be conjugate: 1/p + 1/q = 1");
  }
  if (!(c.tol > 0.0) || !(c.weak_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(c.solver_tol > 0.0 && c.solver_tol <= 1e-4)) throw ConfigError("solver-tol must lie in (0, 1e-4]");
  try {
    parse_backend(c.backend);
    parse_pairing_mode(c.mode);
    parse_laplacian_kind(c.laplacian);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.field != "trig" && c.field != "zero" && c.field != "gradient") {
    throw ConfigError("field must be trig, zero or gradient");
  }
  if (c.pair != "demo" && c.pair != "counterexample") {
    throw ConfigError("pair must be demo or counterexample");
  }
  for (const auto& e : c.eigen) {
    if (static_cast<int>(e.size()) != c.dim) {
      throw ConfigError("eigen: each entry needs " + std::to_string(c.dim) + " indices");
    }
    for (int m : e)
      if (m < 1) throw ConfigError("eigen: indices must be positive");
  }
  try {
    parse_profile(c.profile_a);
    parse_profile(c.profile_b);
    (void)bump(c.dim, c.bump_center, c.bump_radius);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (schedule_command(c.command)) {
    for (std::size_t i = 0; i < c.k_schedule.size(); ++i) {
      if (c.k_schedule[i] < 1 || (i > 0 && c.k_schedule[i] <= c.k_schedule[i - 1])) {
        throw ConfigError("k-schedule must be increasing positive integers");
      }
    }
    const int na = c.n_a ? c.n_a : c.n;
    const int nb = c.n_b ? c.n_b : c.n;
    if (na != nb) {
      throw ConfigError("families live on different grids (n-a = " + std::to_string(na) +
                        ", n-b = " + std::to_string(nb) + ")");
    }
    c.n = na;
    const int required = kPointsPerPeriod * c.k_schedule.back() + 1;
    if (c.n < required) {
      throw ConfigError("n = " + std::to_string(c.n) + " under-resolves k = " +
                        std::to_string(c.k_schedule.back()) + ": need n >= " +
                        std::to_string(required));
    }
  }
}

}  // namespace

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigEntries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

ExperimentConfig resolve_config(const std::string& command, const ConfigEntries& file,
                                const ConfigEntries& flags) {
  ExperimentConfig c = defaults_for(command);
  bool q_set = false;
  for (const auto* entries : {&file, &flags}) {
    for (const auto& [k, v] : *entries) apply(c, k, v, q_set);
  }
  validate(c, q_set);
  return c;
}

ConfigEntries echo(const ExperimentConfig& c) {
  std::string center;
  for (int a = 0; a < c.dim; ++a) center += (a ? "," : "") + format_double(c.bump_center[a]);
  std::string eigen;
  for (std::size_t i = 0; i < c.eigen.size(); ++i) eigen += (i ? ";" : "") + join(c.eigen[i]);
  ConfigEntries e{{"command", c.command}, {"dim", std::to_string(c.dim)}};
  if (ladder_command(c.command)) {
    e.emplace_back("n-ladder", join(c.n_ladder));
  } else {
    e.emplace_back("n", std::to_string(c.n));
  }
  if (schedule_command(c.command)) {
    e.emplace_back("k-schedule", join(c.k_schedule));
    e.emplace_back("profile-a", c.profile_a);
    e.emplace_back("profile-b", c.profile_b);
    e.emplace_back("p", format_double(c.p));
    e.emplace_back("q", format_double(c.q));
  }
  if (c.command == "divcurl") e.emplace_back("pair", c.pair);
  if (c.command == "trace") {
    e.emplace_back("pair", c.pair);
    e.emplace_back("weak-tol", format_double(c.weak_tol));
  }
  if (c.command == "verify-identity") {
    e.emplace_back("field", c.field);
    e.emplace_back("mode", c.mode);
    e.emplace_back("laplacian", c.laplacian);
  }
  if (c.command == "negnorm") e.emplace_back("eigen", eigen);
  e.emplace_back("bump-center", center);
  e.emplace_back("bump-radius", format_double(c.bump_radius));
  e.emplace_back("tol", format_double(c.tol));
  e.emplace_back("backend", c.backend);
  e.emplace_back("solver-tol", format_double(c.solver_tol));
  e.emplace_back("format", c.format);
  return e;
}

std::string output_path(const ExperimentConfig& c) {
  if (!c.out.empty()) return c.out;
  const char* dir = std::getenv("DIVCURL_OUT_DIR");
  std::string base = dir && *dir ? dir : ".";
  if (base.back() != '/') base += '/';
  return base + c.command + "." + c.format;
}

}  // namespace divcurl
