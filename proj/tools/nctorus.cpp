// nctorus: reproduction harness for gauge theory on the noncommutative 3-torus.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/commands.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* section;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"theta12", "torus", "deformation theta12"},
    {"theta13", "torus", "deformation theta13"},
    {"theta23", "torus", "deformation theta23"},
    {"n", "torus", "matrix size N"},
    {"k", "torus", "Chern-Simons coupling"},
    {"seed", "torus", "seed for randomized suites"},
    {"cases", "torus", "random cases in gauge-check"},
    {"max-power", "torus", "largest n in winding(U^n)"},
    {"alpha", "pr", "Powers-Rieffel alpha (theta12 of the projection)"},
    {"eps", "pr", "ramp width"},
    {"trunc", "pr", "Fourier truncation K"},
    {"samples", "pr", "DFT sample count"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace nctorus;
  CLI::App app{"Gauge theory on the noncommutative 3-torus"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool json = false;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  app.add_flag("--json", json, "emit the report as JSON");

  std::vector<std::pair<std::pair<std::string, std::string>, std::optional<std::string>>> settings;
  settings.reserve(std::size(kFlags) + default_tolerances().size());
  for (const auto& f : kFlags) {
    auto& slot = settings.emplace_back(std::pair{std::string(f.section), std::string(f.flag)}, std::nullopt);
    app.add_option(std::string("--") + f.flag, slot.second, f.help);
  }
  for (const auto& [name, value] : default_tolerances()) {
    auto& slot = settings.emplace_back(std::pair{std::string("tol"), name}, std::nullopt);
    app.add_option("--tol-" + name, slot.second, "tolerance '" + name + "' (default " + format_double(value) + ")");
  }

  auto* winding = app.add_subcommand("winding", "winding numbers of powers of the Powers-Rieffel unitary");
  auto* projection = app.add_subcommand("projection", "trace, idempotency defect and Chern number of e");
  auto* gauge = app.add_subcommand("gauge-check", "Chern-Simons gauge-variation identity on random data");
  auto* residue = app.add_subcommand("residue", "zeta residue from the heat trace");
  bool csv = false;
  residue->add_flag("--csv", csv, "print (t, heat_trace) pairs as CSV instead of the report");
  auto* selftest = app.add_subcommand("selftest", "randomized invariant suites");
  auto* exporter = app.add_subcommand("export", "write an element file");
  std::string what = "projection", out_path;
  exporter->add_option("--what", what, "projection, unitary, u1, u2, u3 or random")->capture_default_str();
  exporter->add_option("--out", out_path, "output path")->required();
  auto* importer = app.add_subcommand("import", "read an element file and describe it");
  std::string in_path;
  importer->add_option("path", in_path, "element file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    for (const auto& [key, value] : settings) {
      if (value) apply_setting(cfg, key.first, key.second, *value);
    }
    cfg.validate();

    if (residue->parsed() && csv) {
      write_heat_csv(std::cout);
      return kExitOk;
    }
    if (exporter->parsed()) {
      save_element(out_path, make_element(cfg, what));
      return kExitOk;
    }

    Report report;
    if (winding->parsed()) report = cmd_winding(cfg);
    else if (projection->parsed()) report = cmd_projection(cfg);
    else if (gauge->parsed()) report = cmd_gauge_check(cfg);
    else if (residue->parsed()) report = cmd_residue(cfg);
    else if (selftest->parsed()) report = cmd_selftest(cfg);
    else if (importer->parsed()) report = describe_element(load_element(in_path));

    if (json) render_json(std::cout, report);
    else render_text(std::cout, report);
    return report.exit_code();
  } catch (const PreconditionError& e) {
    std::cerr << "nctorus: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "nctorus: " << e.what() << '\n';
    return kExitConfig;
  }
}
