#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rdd/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RDD_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) r.output += buf.data();
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_path(const std::string& name) {
  return std::string(RDD_DATA_DIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream os(path);
  os << body;
}

const char* kFig1Scenario = R"({
  "atoms": {
    "overrides": {
      "gamma_aa": 1.07, "gamma_bb": 1.07, "gamma_ab": 0.04, "delta_ab": 0.06,
      "reference": {"omega": 2.5e15, "dipole": 3.33564e-30}
    }
  },
  "analysis": ["coupling", "dynamics-weak", "rates"],
  "numerics": {"t_max_gamma": 12.0, "time_samples": 4001},
  "output": {"directory": "OUTDIR"}
})";

std::string fig1_scenario(const std::string& outdir) {
  std::string s = kFig1Scenario;
  s.replace(s.find("OUTDIR"), 6, outdir);
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("version and schema subcommands") {
  CHECK(run_cli("version").exit_code == 0);
  const CliResult schema = run_cli("schema");
  CHECK(schema.exit_code == 0);
  CHECK(schema.output.find("atoms") != std::string::npos);
  CHECK(schema.output.find("analysis") != std::string::npos);
}

TEST_CASE("missing subcommand is a usage error") {
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("minimal geometry scenario parses with defaults") {
  const std::string path = data_path("minimal.json");
  write_file(path, R"({
    "atoms": {
      "geometry": {
        "positions": [[0,0,0],[0,0,2.5e-7]],
        "dipoles": [[3.33564e-30,0,0],[3.33564e-30,0,0]],
        "omega": 2.5e15
      }
    },
    "analysis": ["coupling"]
  })");
  const rdd::Scenario sc = rdd::load_scenario(path);
  CHECK(sc.from_geometry);
  CHECK(sc.output.format == "csv");
  CHECK(sc.coupling.gamma(0, 0) > 0.0);
  CHECK(sc.coupling.gamma(0, 0) == doctest::Approx(sc.gamma0).epsilon(1e-9));
}

TEST_CASE("override scenario builds the coupling set without green queries") {
  const std::string path = data_path("fig1.json");
  write_file(path, fig1_scenario(data_path("fig1_direct_out")));
  const rdd::Scenario sc = rdd::load_scenario(path);
  CHECK(!sc.from_geometry);
  CHECK(sc.coupling.gamma(0, 0) == doctest::Approx(1.07 * sc.gamma0).epsilon(1e-12));
  CHECK(sc.coupling.gamma(0, 1) == doctest::Approx(0.04 * sc.gamma0).epsilon(1e-12));
  CHECK(sc.coupling.delta(0, 1) == doctest::Approx(0.06 * sc.gamma0).epsilon(1e-12));
}

TEST_CASE("geometry and overrides are mutually exclusive") {
  const std::string path = data_path("conflict.json");
  write_file(path, R"({
    "atoms": {
      "geometry": {"positions": [[0,0,0],[0,0,1e-7]],
                   "dipoles": [[1e-30,0,0],[1e-30,0,0]], "omega": 2.5e15},
      "overrides": {"gamma_aa": 1, "gamma_bb": 1, "gamma_ab": 0, "delta_ab": 0,
                    "reference": {"omega": 2.5e15, "dipole": 1e-30}}
    },
    "analysis": ["coupling"]
  })");
  CHECK_THROWS_AS(rdd::load_scenario(path), rdd::ConfigError);
  CHECK(run_cli("run " + path).exit_code == 2);
}

TEST_CASE("unknown analysis name fails with a hint") {
  const std::string path = data_path("badanalysis.json");
  write_file(path, R"({
    "atoms": {"overrides": {"gamma_aa": 1, "gamma_bb": 1, "gamma_ab": 0,
      "delta_ab": 0, "reference": {"omega": 2.5e15, "dipole": 1e-30}}},
    "analysis": ["spectroscopy"]
  })");
  const CliResult r = run_cli("run " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown analysis") != std::string::npos);
  CHECK(r.output.find("schema") != std::string::npos);
}

TEST_CASE("run writes the expected artifacts and is deterministic") {
  const std::string out1 = data_path("det_out1");
  const std::string out2 = data_path("det_out2");
  fs::remove_all(out1);
  fs::remove_all(out2);
  const std::string path = data_path("fig1_run.json");
  write_file(path, fig1_scenario(out1));

  CHECK(run_cli("run " + path + " --quiet").exit_code == 0);
  for (const char* f : {"coupling.csv", "dynamics-weak.csv", "rates.csv", "manifest.json"})
    CHECK(fs::exists(fs::path(out1) / f));

  CHECK(run_cli("run " + path + " --quiet --output-dir " + out2).exit_code == 0);
  for (const char* f : {"coupling.csv", "dynamics-weak.csv", "rates.csv"})
    CHECK(slurp(out1 + "/" + f) == slurp(out2 + "/" + f));

  SUBCASE("collision handling") {
    CHECK(run_cli("run " + path + " --quiet").exit_code == 2);
    CHECK(run_cli("run " + path + " --quiet --force").exit_code == 0);
  }
}

TEST_CASE("json format mirror") {
  const std::string out = data_path("json_out");
  fs::remove_all(out);
  const std::string path = data_path("fig1_json.json");
  write_file(path, fig1_scenario(out));
  CHECK(run_cli("run " + path + " --quiet --format json").exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "rates.json"));
  const std::string body = slurp(out + "/rates.json");
  CHECK(body.find("\"w1\"") != std::string::npos);
  CHECK(body.find("\"regime\"") != std::string::npos);
}

TEST_CASE("numeric failures exit with code 3") {
  // Strong-branch request that contradicts the collective-rate ordering.
  const std::string path = data_path("strongbad.json");
  write_file(path, R"({
    "atoms": {"overrides": {"gamma_aa": 1, "gamma_bb": 1, "gamma_ab": 0.5,
      "delta_ab": 0.1, "reference": {"omega": 2.5e15, "dipole": 3.33564e-30}}},
    "analysis": ["dynamics-strong"],
    "numerics": {"resonance": {"omega_m": 2.5e15, "half_width": 2.0e6},
                 "branch": "minus"},
    "output": {"directory": ")" + data_path("strongbad_out") + R"("}
  })");
  CHECK(run_cli("run " + path + " --quiet").exit_code == 3);
  // Partial outputs removed on failure.
  CHECK(!fs::exists(data_path("strongbad_out") + "/manifest.json"));
}

TEST_CASE("selftest subcommand passes") {
  const CliResult r = run_cli("selftest --geometries 10");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
}
