#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "rdd/scenario.hpp"
#include "rdd/selftest.hpp"
#include "rdd/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom resonant dipole-dipole interaction simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string output_dir, format;
  bool quiet = false, force = false;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  run->add_option("--output-dir", output_dir, "Override the output directory");
  run->add_option("--format", format, "Override the output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--quiet", quiet, "Suppress progress output");
  run->add_flag("--force", force, "Overwrite existing output files");

  int geometries = 100;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_option("--geometries", geometries, "Randomized geometries to check")
      ->check(CLI::PositiveNumber);

  auto* schema = app.add_subcommand("schema", "Print the scenario schema");
  auto* version = app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (version->parsed()) {
    std::cout << rdd::kVersion << "\n";
    return kExitOk;
  }
  if (schema->parsed()) {
    std::cout << rdd::scenario_schema();
    return kExitOk;
  }
  if (selftest->parsed()) {
    return rdd::report_selftest(std::cout, geometries) == 0 ? kExitOk : kExitNumeric;
  }

  try {
    rdd::Scenario sc = rdd::load_scenario(scenario_path);
    if (!output_dir.empty()) sc.output.directory = output_dir;
    if (!format.empty()) sc.output.format = format;
    sc.output.force = force;
    sc.output.quiet = quiet;
    const auto written = rdd::run_scenario(sc);
    if (!quiet)
      for (const auto& p : written) std::cout << p << "\n";
    return kExitOk;
  } catch (const rdd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    std::cerr << "run '" << argv[0] << " schema' for the scenario format\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
