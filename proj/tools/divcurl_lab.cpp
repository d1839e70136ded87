#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "divcurl/config.hpp"
#include "divcurl/experiments.hpp"

namespace {

struct FlagSpec {
  const char* key;
  const char* help;
};

// Every config key is also a flag; flags given on the command line override the config file.
constexpr FlagSpec kFlags[] = {
    {"dim", "spatial dimension, 2 or 3"},
    {"n", "points per axis"},
    {"n-ladder", "comma-separated grid sizes for refinement studies"},
    {"n-a", "grid size for family a (must equal n-b)"},
    {"n-b", "grid size for family b"},
    {"k-schedule", "comma-separated wavenumbers, eps = 1/(2 pi k)"},
    {"profile-a", "periodic profile for the div-free family"},
    {"profile-b", "periodic profile for the curl-free family"},
    {"field", "verify-identity field: trig, zero or gradient"},
    {"pair", "trace pair: demo or counterexample"},
    {"p", "integrability exponent for family a"},
    {"q", "conjugate exponent for family b"},
    {"bump-center", "comma-separated centre of the test function"},
    {"bump-radius", "radius of the test function"},
    {"tol", "pass/fail tolerance of the command"},
    {"weak-tol", "per-term tolerance for trace limits"},
    {"solver-tol", "relative residual for the CG backend"},
    {"backend", "Poisson backend: sine-transform or cg"},
    {"mode", "pairing evaluation: by-parts or direct"},
    {"laplacian", "compact or composed"},
    {"eigen", "negnorm eigenfunction indices, e.g. 1,1;2,3"},
    {"out", "output file"},
    {"format", "json or csv"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of the div-curl lemma and its integral identity"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const std::string& name : divcurl::kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    for (const auto& f : kFlags) {
      sub->add_option(std::string("--") + f.key, values[name][f.key], f.help);
    }
    subs[name] = sub;
  }
  subs["divcurl"]->description("product of a div-free and a curl-free family against a bump");
  subs["counterexample"]->description("oscillating gradient pair whose product does not converge");
  subs["trace"]->description("term-by-term balance of the integral identity along a family");
  subs["verify-identity"]->description("integral identity residuals under grid refinement");
  subs["negnorm"]->description("H^-1 norm of sine eigenfunctions");
  subs["poisson-mms"]->description("Poisson solver order of accuracy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    divcurl::ConfigEntries file, flags;
    try {
      if (!config_path.empty()) file = divcurl::read_config_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    }
    for (const auto& f : kFlags) {
      if (sub->count(std::string("--") + f.key) > 0) flags.emplace_back(f.key, values[name][f.key]);
    }
    return divcurl::run_command(name, file, flags, std::cout, std::cerr);
  }
  return 2;
}
