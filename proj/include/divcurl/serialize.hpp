#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "divcurl/identity.hpp"
#include "divcurl/lab.hpp"
#include "divcurl/poisson.hpp"
#include "divcurl/report.hpp"

namespace divcurl {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Non-finite values serialize as null.
Json number(double v);

Json to_json(const SolverStats& s);
Json to_json(const IdentityReport& r);
Json to_json(const BalanceReport& r);
Json to_json(const ConvergenceSeries& s);
Json to_json(const ConvergenceReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const ProofTraceReport& r);
Json to_json(const Box& b, int dim);

/// Plot-ready table: one header row, string cells.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

/// Writes "# divcurl-report v<schema> <kind>", one "# key=value" comment per
/// metadata entry, the header and the rows.
void write_csv(std::ostream& os, const std::string& kind,
               const std::vector<std::pair<std::string, std::string>>& metadata,
               const CsvTable& table);

}  // namespace divcurl
