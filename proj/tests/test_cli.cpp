#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "divcurl/experiments.hpp"

using namespace divcurl;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err, report;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "divcurl_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Run run(const std::string& command, ConfigEntries flags, const std::string& file = "report.json") {
  const fs::path path = scratch() / file;
  fs::remove(path);
  flags.emplace_back("out", path.string());
  std::ostringstream out, err;
  const int code = run_command(command, {}, flags, out, err);
  return {code, out.str(), err.str(), fs::exists(path) ? slurp(path) : ""};
}

}  // namespace

TEST_CASE("invalid config exits 2 and writes nothing") {
  SUBCASE("support margin") {
    const Run r = run("verify-identity", {{"bump-radius", "0.9"}});
    CHECK(r.code == 2);
    CHECK(r.err.find("support margin") != std::string::npos);
    CHECK(r.report.empty());
  }
  SUBCASE("mismatched grids") {
    const Run r = run("divcurl", {{"n-a", "129"}, {"n-b", "257"}});
    CHECK(r.code == 2);
    CHECK(r.err.find("different grids") != std::string::npos);
  }
  SUBCASE("under-resolved schedule") {
    const Run r = run("counterexample", {{"n", "65"}});
    CHECK(r.code == 2);
    CHECK(r.err.find("need n >= 257") != std::string::npos);
  }
}

TEST_CASE("zero field verifies with an all-zero report") {
  const Run r = run("verify-identity", {{"field", "zero"}, {"n-ladder", "33,65"}});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.report);
  CHECK(j["schema_version"] == 1);
  CHECK(j["pass"] == true);
  for (const auto& rung : j["result"]["rungs"]) {
    CHECK(rung["identity"]["lhs"] == 0.0);
    CHECK(rung["identity"]["rhs_sum"] == 0.0);
    for (const auto& [name, value] : rung["identity"]["terms"].items()) CHECK(value == 0.0);
  }
}

TEST_CASE("negnorm eigenfunction within 1%") {
  const Run r = run("negnorm", {{"eigen", "1,1"}});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.report);
  const double value = j["result"]["eigenfunctions"][0]["value"];
  const double target = 0.5 / (std::numbers::pi * std::sqrt(2.0));
  CHECK(std::abs(value - target) <= 0.01 * target);
  CHECK(j["config"]["n"] == "129");
}

TEST_CASE("poisson-mms rates") {
  const Run r = run("poisson-mms", {});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.report);
  CHECK(j["result"]["rate_poly"].get<double>() == doctest::Approx(2.0).epsilon(0.1));
  CHECK(j["result"]["rate_trig"].get<double>() == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("tolerance failure exits 1") {
  const Run r = run("negnorm", {{"eigen", "2,3"}, {"n", "17"}, {"tol", "1e-6"}});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL eigenfunction (2,3)") != std::string::npos);
  CHECK(nlohmann::json::parse(r.report)["pass"] == false);
}

TEST_CASE("divcurl demo and counterexample configs both exit 0") {
  const ConfigEntries base{{"n", "65"}, {"k-schedule", "1,2,4"}};
  const Run demo = run("divcurl", base);
  CHECK(demo.code == 0);
  ConfigEntries cx = base;
  cx.emplace_back("pair", "counterexample");
  const Run counter = run("divcurl", cx);
  CHECK(counter.code == 0);
  const auto j = nlohmann::json::parse(counter.report);
  CHECK(j["result"]["pair"] == "counterexample");
  bool iv_mismatch = false;
  for (const auto& m : j["result"]["declaration_mismatches"])
    if (m["hypothesis"] == "iv") iv_mismatch = true;
  CHECK(iv_mismatch);
}

TEST_CASE("trace csv has one row per wavenumber plus the limit") {
  // 16 points per period at n = 65 balances only to a few 1e-3.
  const Run r = run("trace", {{"n", "65"}, {"k-schedule", "1,2,4"}, {"tol", "1e-2"}, {"format", "csv"}},
                    "trace.csv");
  CHECK(r.code == 0);
  std::istringstream in(r.report);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# divcurl-report v1 trace");
  int comments = 0, data = 0;
  std::string header;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
    } else if (header.empty()) {
      header = line;
    } else {
      ++data;
    }
  }
  CHECK(comments > 5);
  CHECK(header.rfind("k,eps,lhs,pairing_D", 0) == 0);
  CHECK(data == 4);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& [command, flags] : std::vector<std::pair<std::string, ConfigEntries>>{
           {"verify-identity", {{"n-ladder", "33,65"}}},
           {"divcurl", {{"n", "65"}, {"k-schedule", "1,2,4"}}},
           {"trace", {{"n", "65"}, {"k-schedule", "1,2,4"}, {"format", "csv"}}}}) {
    CAPTURE(command);
    const Run a = run(command, flags, "a.out");
    const Run b = run(command, flags, "b.out");
    CHECK(!a.report.empty());
    CHECK(a.report == b.report);
    CHECK(a.out.substr(0, a.out.rfind(" -> ")) == b.out.substr(0, b.out.rfind(" -> ")));
  }
}

TEST_CASE("output directory is created") {
  const fs::path dir = scratch() / "nested" / "deeper";
  fs::remove_all(scratch() / "nested");
  std::ostringstream out, err;
  const int code = run_command("negnorm", {}, {{"n", "33"}, {"tol", "0.5"}, {"out", (dir / "r.json").string()}}, out, err);
  CHECK(code == 0);
  CHECK(fs::exists(dir / "r.json"));
}
