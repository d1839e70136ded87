#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divcurl/grid.hpp"

namespace divcurl {

/// Invalid experiment configuration (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

inline const std::vector<std::string> kCommands = {
    "verify-identity", "divcurl", "counterexample", "trace", "negnorm", "poisson-mms"};

/// `tol` is the command's primary gate:
///   verify-identity  relative residual at n = 129 (scaled as h^2 along the ladder)
///   divcurl, counterexample  weak gaps relative to the integral of |phi|
///   trace            relative balance residual of every row
///   negnorm          relative error against the eigenfunction value
///   poisson-mms      allowed deviation of the fitted order from 2
struct ExperimentConfig {
  std::string command;
  int dim = 2;
  int n = 257;
  std::vector<int> n_ladder;
  int n_a = 0;  // 0 follows n
  int n_b = 0;
  std::vector<int> k_schedule{2, 4, 8, 16};
  std::string profile_a = "affine+sin";
  std::string profile_b = "affine+cos:2";
  std::string field = "trig";   // verify-identity: trig | zero | gradient
  std::string pair = "demo";    // divcurl, trace: demo | counterexample
  double p = 2.0;
  double q = 2.0;
  Point bump_center{0.5, 0.5, 0.5};
  double bump_radius = 0.3;
  double tol = 1e-3;
  double weak_tol = 1e-2;
  double solver_tol = 1e-10;
  std::string backend = "sine-transform";
  std::string mode = "by-parts";
  std::string laplacian = "compact";
  std::vector<std::vector<int>> eigen{{1, 1}, {2, 3}};
  std::string out;  // empty: <DIVCURL_OUT_DIR or .>/<command>.<format>
  std::string format = "json";
};

/// Reads "key = value" lines; '#' starts a comment. Throws ConfigError.
ConfigEntries read_config_file(const std::string& path);
ConfigEntries parse_config_text(const std::string& text);

/// Command defaults, then file entries, then flag entries, applied in order.
/// Setting n on a ladder command rebuilds the ladder by halving from n.
ExperimentConfig resolve_config(const std::string& command, const ConfigEntries& file,
                                const ConfigEntries& flags);

/// Resolved configuration as ordered key/value text, for echoing into reports.
ConfigEntries echo(const ExperimentConfig& cfg);

/// Output path for the report.
std::string output_path(const ExperimentConfig& cfg);

}  // namespace divcurl
