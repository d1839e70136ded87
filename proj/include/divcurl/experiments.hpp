#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divcurl/config.hpp"
#include "divcurl/serialize.hpp"

namespace divcurl {

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
  bool gating = true;  // non-gating criteria are reported but do not set the exit code
};

struct CommandResult {
  Json result;
  CsvTable table;
  std::vector<Criterion> criteria;

  /// 0 when every gating criterion passes, 1 otherwise.
  int exit_code() const;
};

CommandResult cmd_verify_identity(const ExperimentConfig& cfg);
CommandResult cmd_divcurl(const ExperimentConfig& cfg);
CommandResult cmd_counterexample(const ExperimentConfig& cfg);
CommandResult cmd_trace(const ExperimentConfig& cfg);
CommandResult cmd_negnorm(const ExperimentConfig& cfg);
CommandResult cmd_poisson_mms(const ExperimentConfig& cfg);

CommandResult run_experiment(const ExperimentConfig& cfg);

/// Full report document: schema version, echoed config, result, criteria.
Json report_json(const ExperimentConfig& cfg, const CommandResult& r);

/// Resolves the configuration, runs the command, writes the report and prints
/// one line per criterion to `out`. Returns 0, 1 (criterion failed) or 2
/// (invalid configuration); errors go to `err`.
int run_command(const std::string& command, const ConfigEntries& file,
                const ConfigEntries& flags, std::ostream& out, std::ostream& err);

}  // namespace divcurl
