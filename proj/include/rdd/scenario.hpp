#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdd/atom.hpp"
#include "rdd/coupling.hpp"
#include "rdd/dynamics.hpp"
#include "rdd/green.hpp"

namespace rdd {

/// Configuration problem (bad file, bad key, conflicting blocks).  The CLI
/// maps this to exit code 2; every other exception maps to 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string directory = "out";
  std::string format = "csv";  // csv | json
  bool force = false;
  bool quiet = false;
};

struct ScenarioNumerics {
  double t_max = 0.0;        // s; 0 selects t_max_gamma / max decay rate
  double t_max_gamma = 10.0;
  Eigen::Index time_samples = 2001;
  double spectrum_span_gamma = 20.0;
  Eigen::Index spectrum_samples = 2001;
  double bandwidth_gamma = 100.0;  // volterra memory bandwidth, decay units
  double rel_tol = 1e-10;
  double pv_window = 0.0;  // rad/s; 0 selects the full window
  ResonanceProfile resonance;
  bool has_resonance = false;
  std::string branch = "plus";
  double observation_time = 0.0;  // s; 0 selects the dynamics grid length
  Eigen::Vector3d observation = Eigen::Vector3d::Zero();
  bool has_observation = false;
  Eigen::Vector3cd f_a{1.0, 0.0, 0.0};  // emission amplitudes used when no
  Eigen::Vector3cd f_b{0.5, 0.0, 0.0};  // observation point is configured
};

struct Scenario {
  GreenSource source = GreenSource::analytic_vacuum();
  AtomConfig atoms;
  CouplingSet coupling;
  bool from_geometry = false;
  double gamma0 = 0.0;  // free-space decay rate of the reference dipole
  std::vector<std::string> analyses;
  ScenarioNumerics numerics;
  OutputOptions output;
  std::string raw_text;  // parsed configuration echoed into the manifest
};

/// Parses and validates a scenario file (JSON).  All units are normalized to
/// SI; coefficient overrides given in free-space-decay units are converted
/// using the reference frequency and dipole moment.  Throws ConfigError with
/// the offending key path.
Scenario load_scenario(const std::string& path);

/// Executes the requested analyses in dependency order and writes one output
/// file per analysis plus manifest.json.  Existing target files are an error
/// unless force is set; partially written outputs are removed on failure.
/// Returns the list of written file paths.
std::vector<std::string> run_scenario(const Scenario& sc);

/// Human-readable configuration schema for the `schema` subcommand.
std::string scenario_schema();

}  // namespace rdd
