#include "rdd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rdd/constants.hpp"
#include "rdd/rates.hpp"
#include "rdd/series_io.hpp"
#include "rdd/spectrum.hpp"
#include "rdd/version.hpp"

namespace rdd {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const std::vector<std::string> kAnalysisOrder = {
    "coupling",        "dynamics-weak",  "dynamics-strong", "volterra",
    "rates",           "spectrum-weak",  "spectrum-strong", "spectrum-finite-T"};

[[noreturn]] void config_fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const ordered_json& require(const ordered_json& j, const std::string& key,
                            const std::string& path) {
  if (!j.is_object() || !j.contains(key)) config_fail(path + "." + key, "missing");
  return j.at(key);
}

double num(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) config_fail(path, "expected a number");
  return j.get<double>();
}

double num_or(const ordered_json& j, const std::string& key, double fallback,
              const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return num(j.at(key), path + "." + key);
}

Eigen::Vector3d vec3(const ordered_json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) config_fail(path, "expected [x, y, z]");
  return {num(j[0], path), num(j[1], path), num(j[2], path)};
}

GreenSource parse_medium(const ordered_json& root, const fs::path& base) {
  if (!root.contains("medium")) return GreenSource::analytic_vacuum();
  const ordered_json& m = root.at("medium");
  const std::string type = require(m, "type", "medium").get<std::string>();
  if (type == "vacuum") return GreenSource::analytic_vacuum();
  if (type == "constant") {
    const ordered_json& e = require(m, "epsilon", "medium");
    if (!e.is_array() || e.size() != 2) config_fail("medium.epsilon", "expected [re, im]");
    try {
      return GreenSource::analytic_bulk(PermittivityModel::constant(
          {num(e[0], "medium.epsilon"), num(e[1], "medium.epsilon")}));
    } catch (const std::exception& ex) {
      config_fail("medium.epsilon", ex.what());
    }
  }
  if (type == "drude-lorentz") {
    std::vector<LorentzOscillator> oscs;
    for (const auto& o : require(m, "oscillators", "medium")) {
      oscs.push_back({num(require(o, "omega_p", "medium.oscillators"), "omega_p"),
                      num(require(o, "omega_t", "medium.oscillators"), "omega_t"),
                      num(require(o, "gamma", "medium.oscillators"), "gamma")});
    }
    return GreenSource::analytic_bulk(PermittivityModel::drude_lorentz(oscs));
  }
  if (type == "tabulated") {
    TabulatedGreen table;
    table.set_interp_order(static_cast<int>(num_or(m, "interp_order", 3, "medium")));
    for (const auto& f : require(m, "green_files", "medium")) {
      const int i = static_cast<int>(num(require(f, "i", "medium.green_files"), "i"));
      const int j = static_cast<int>(num(require(f, "j", "medium.green_files"), "j"));
      fs::path p = require(f, "path", "medium.green_files").get<std::string>();
      if (p.is_relative()) p = base / p;
      try {
        load_green_table_file(table, p.string(), i, j);
      } catch (const std::exception& ex) {
        config_fail("medium.green_files", ex.what());
      }
    }
    try {
      return GreenSource::tabulated(std::move(table));
    } catch (const std::exception& ex) {
      config_fail("medium.green_files", ex.what());
    }
  }
  config_fail("medium.type", "unknown type '" + type + "'");
}

void parse_atoms(const ordered_json& root, Scenario& sc) {
  const ordered_json& a = require(root, "atoms", "");
  const bool has_geom = a.contains("geometry");
  const bool has_over = a.contains("overrides");
  if (has_geom == has_over)
    config_fail("atoms", "exactly one of {geometry, overrides} is required");

  sc.atoms.resize(2);
  if (has_geom) {
    sc.from_geometry = true;
    const ordered_json& g = a.at("geometry");
    const ordered_json& pos = require(g, "positions", "atoms.geometry");
    const ordered_json& dip = require(g, "dipoles", "atoms.geometry");
    const ordered_json& w = require(g, "omega", "atoms.geometry");
    if (!pos.is_array() || pos.size() != 2 || !dip.is_array() || dip.size() != 2)
      config_fail("atoms.geometry", "positions and dipoles need two entries");
    for (int i = 0; i < 2; ++i) {
      sc.atoms[i].position = vec3(pos[i], "atoms.geometry.positions");
      sc.atoms[i].dipole =
          vec3(dip[i], "atoms.geometry.dipoles").cast<std::complex<double>>();
      const double wi = w.is_array() ? num(w.at(i), "atoms.geometry.omega")
                                     : num(w, "atoms.geometry.omega");
      if (wi <= 0) config_fail("atoms.geometry.omega", "must be positive");
      sc.atoms[i].omega = sc.atoms[i].omega_shifted = wi;
    }
    sc.gamma0 = free_space_decay_rate(sc.atoms[0].omega, sc.atoms[0].dipole.norm());
    if (g.contains("lamb_shift") && g.at("lamb_shift").get<bool>())
      apply_lamb_shifts(sc.atoms, sc.source);
    try {
      sc.coupling = build_coupling_set(sc.atoms, sc.source);
    } catch (const std::exception& ex) {
      config_fail("atoms.geometry", ex.what());
    }
  } else {
    const ordered_json& o = a.at("overrides");
    const ordered_json& ref = require(o, "reference", "atoms.overrides");
    const double w = num(require(ref, "omega", "atoms.overrides.reference"), "omega");
    const double d = num(require(ref, "dipole", "atoms.overrides.reference"), "dipole");
    if (w <= 0 || d <= 0)
      config_fail("atoms.overrides.reference", "omega and dipole must be positive");
    sc.gamma0 = free_space_decay_rate(w, d);
    const double gaa = num(require(o, "gamma_aa", "atoms.overrides"), "gamma_aa");
    const double gbb = num(require(o, "gamma_bb", "atoms.overrides"), "gamma_bb");
    const double gab = num(require(o, "gamma_ab", "atoms.overrides"), "gamma_ab");
    const double dab = num(require(o, "delta_ab", "atoms.overrides"), "delta_ab");
    if (gaa <= 0 || gbb <= 0)
      config_fail("atoms.overrides", "diagonal rates must be positive");
    sc.coupling = coupling_from_rates(gaa * sc.gamma0, gbb * sc.gamma0, gab * sc.gamma0,
                                      dab * sc.gamma0);
    const double wavelength = 2.0 * kPi * kSpeedOfLight / w;
    for (int i = 0; i < 2; ++i) {
      sc.atoms[i].position = Eigen::Vector3d(i * wavelength, 0, 0);
      sc.atoms[i].dipole = Eigen::Vector3cd(d, 0, 0);
      sc.atoms[i].omega = sc.atoms[i].omega_shifted = w;
    }
  }
  for (const Atom& at : sc.atoms) at.validate();
}

void parse_numerics(const ordered_json& root, ScenarioNumerics& n) {
  if (!root.contains("numerics")) return;
  const ordered_json& j = root.at("numerics");
  n.t_max = num_or(j, "t_max", n.t_max, "numerics");
  n.t_max_gamma = num_or(j, "t_max_gamma", n.t_max_gamma, "numerics");
  n.time_samples =
      static_cast<Eigen::Index>(num_or(j, "time_samples", double(n.time_samples), "numerics"));
  n.spectrum_span_gamma =
      num_or(j, "spectrum_span_gamma", n.spectrum_span_gamma, "numerics");
  n.spectrum_samples = static_cast<Eigen::Index>(
      num_or(j, "spectrum_samples", double(n.spectrum_samples), "numerics"));
  n.bandwidth_gamma = num_or(j, "bandwidth_gamma", n.bandwidth_gamma, "numerics");
  n.rel_tol = num_or(j, "rel_tol", n.rel_tol, "numerics");
  n.pv_window = num_or(j, "pv_window", n.pv_window, "numerics");
  n.observation_time = num_or(j, "observation_time", n.observation_time, "numerics");
  if (j.contains("resonance")) {
    const ordered_json& r = j.at("resonance");
    n.resonance.omega_m = num(require(r, "omega_m", "numerics.resonance"), "omega_m");
    n.resonance.half_width =
        num(require(r, "half_width", "numerics.resonance"), "half_width");
    n.has_resonance = true;
  }
  if (j.contains("branch")) {
    n.branch = j.at("branch").get<std::string>();
    if (n.branch != "plus" && n.branch != "minus")
      config_fail("numerics.branch", "expected 'plus' or 'minus'");
  }
  if (j.contains("observation")) {
    n.observation = vec3(j.at("observation"), "numerics.observation");
    n.has_observation = true;
  }
  if (j.contains("f_a")) n.f_a = vec3(j.at("f_a"), "numerics.f_a").cast<std::complex<double>>();
  if (j.contains("f_b")) n.f_b = vec3(j.at("f_b"), "numerics.f_b").cast<std::complex<double>>();
  if (n.time_samples < 2 || n.spectrum_samples < 2)
    config_fail("numerics", "sample counts must be at least 2");
}

/// Serialized output emitter with collision checks and failure cleanup.
class Emitter {
 public:
  Emitter(const OutputOptions& opts, Metadata base_meta)
      : opts_(opts), meta_(std::move(base_meta)) {}

  fs::path target(const std::string& analysis, const std::string& ext) const {
    return fs::path(opts_.directory) / (analysis + "." + ext);
  }

  void check_collision(const fs::path& p) const {
    if (!opts_.force && fs::exists(p))
      config_fail(p.string(), "output exists; pass --force to overwrite");
  }

  void emit_text(const std::string& analysis, const std::string& ext,
                 const std::string& body) {
    const fs::path p = target(analysis, ext);
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    os << body;
    written_.push_back(p.string());
  }

  Metadata meta(const std::string& analysis) const {
    Metadata m = meta_;
    m["analysis"] = analysis;
    return m;
  }

  const std::vector<std::string>& written() const { return written_; }

  void cleanup() {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  OutputOptions opts_;
  Metadata meta_;
  std::vector<std::string> written_;
};

std::string key_value_block(const std::vector<std::pair<std::string, double>>& kv,
                            const Metadata& meta, bool as_json) {
  if (as_json) {
    ordered_json j;
    ordered_json mj = ordered_json::object();
    for (const auto& [k, v] : meta) mj[k] = v;
    j["meta"] = std::move(mj);
    for (const auto& [k, v] : kv) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : kv) os << k << " = " << format_double(v) << "\n";
  return os.str();
}

RateRegime detect_regime(double gaa, double gbb) {
  if (std::abs(gaa - gbb) < 1e-9 * std::max(gaa, gbb)) return RateRegime::Equal;
  return gaa > gbb ? RateRegime::DonorBroad : RateRegime::AcceptorBroad;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open scenario file: " + path);
  ordered_json root;
  try {
    root = ordered_json::parse(is);
  } catch (const std::exception& ex) {
    throw ConfigError(path + ": " + ex.what());
  }

  Scenario sc;
  sc.source = parse_medium(root, fs::path(path).parent_path());
  parse_atoms(root, sc);
  parse_numerics(root, sc.numerics);

  const ordered_json& an = require(root, "analysis", "");
  if (!an.is_array() || an.empty())
    config_fail("analysis", "expected a nonempty list of analysis names");
  for (const auto& name : an) {
    const std::string s = name.get<std::string>();
    if (std::find(kAnalysisOrder.begin(), kAnalysisOrder.end(), s) == kAnalysisOrder.end()) {
      std::string known;
      for (const auto& k : kAnalysisOrder) known += " " + k;
      config_fail("analysis", "unknown analysis '" + s + "'; known:" + known);
    }
    sc.analyses.push_back(s);
  }

  if (root.contains("output")) {
    const ordered_json& o = root.at("output");
    if (o.contains("directory")) sc.output.directory = o.at("directory").get<std::string>();
    if (o.contains("format")) sc.output.format = o.at("format").get<std::string>();
  }
  if (sc.output.format != "csv" && sc.output.format != "json")
    config_fail("output.format", "expected 'csv' or 'json'");

  const bool needs_resonance =
      std::find(sc.analyses.begin(), sc.analyses.end(), "dynamics-strong") !=
          sc.analyses.end() ||
      std::find(sc.analyses.begin(), sc.analyses.end(), "spectrum-strong") !=
          sc.analyses.end();
  if (needs_resonance && !sc.numerics.has_resonance)
    config_fail("numerics.resonance", "required by strong-coupling analyses");

  sc.raw_text = root.dump(2);
  return sc;
}

std::vector<std::string> run_scenario(const Scenario& sc) {
  const ScenarioNumerics& n = sc.numerics;
  const CouplingSet& cs = sc.coupling;
  const double gref = std::max(cs.gamma(0, 0), cs.gamma(1, 1));
  const double t_max = n.t_max > 0 ? n.t_max : n.t_max_gamma / gref;
  const bool json = sc.output.format == "json";
  const std::string ext = sc.output.format;
  const double omega_a = sc.atoms[0].omega_shifted;

  fs::create_directories(sc.output.directory);
  Metadata base{{"version", kVersion}, {"format", sc.output.format}};
  Emitter em(sc.output, base);

  auto requested = [&](const std::string& name) {
    return std::find(sc.analyses.begin(), sc.analyses.end(), name) != sc.analyses.end();
  };
  for (const auto& name : kAnalysisOrder)
    if (requested(name)) em.check_collision(em.target(name, ext));
  em.check_collision(em.target("manifest", "json"));

  TimeSeries weak_series;  // shared by rates and the finite-time spectrum
  bool have_weak = false;
  auto ensure_weak = [&]() {
    if (!have_weak) {
      weak_series = weak_amplitudes(cs, uniform_grid(t_max, n.time_samples));
      have_weak = true;
    }
  };

  try {
    for (const auto& name : kAnalysisOrder) {
      if (!requested(name)) continue;

      if (name == "coupling") {
        std::vector<std::pair<std::string, double>> kv = {
            {"gamma_aa", cs.gamma(0, 0)},     {"gamma_bb", cs.gamma(1, 1)},
            {"gamma_ab", cs.gamma(0, 1)},     {"delta_ab", cs.delta(0, 1)},
            {"gamma0", sc.gamma0},            {"gamma_aa_rel", cs.gamma(0, 0) / sc.gamma0},
            {"gamma_bb_rel", cs.gamma(1, 1) / sc.gamma0},
            {"gamma_ab_rel", cs.gamma(0, 1) / sc.gamma0},
            {"delta_ab_rel", cs.delta(0, 1) / sc.gamma0},
            {"kappa_ab_re", cs.kappa(0, 1).real()},
            {"kappa_ab_im", cs.kappa(0, 1).imag()}};
        em.emit_text(name, ext, key_value_block(kv, em.meta(name), json));
      } else if (name == "dynamics-weak") {
        ensure_weak();
        std::ostringstream os;
        if (json)
          os << time_series_json(weak_series, em.meta(name));
        else
          write_time_series_csv(os, weak_series, em.meta(name));
        em.emit_text(name, ext, os.str());
      } else if (name == "dynamics-strong") {
        const CollectiveParams cp =
            collective_params(cs.gamma(0, 0), cs.gamma(0, 1), n.resonance.half_width);
        const Branch br = n.branch == "plus" ? Branch::Plus : Branch::Minus;
        const double omega = br == Branch::Plus ? cp.omega_plus : cp.omega_minus;
        const double tm = n.t_max > 0 ? n.t_max : 8.0 * kPi / omega;
        TimeSeries ts = strong_populations(cp, n.resonance.half_width, cs.delta(0, 1), br,
                                           uniform_grid(tm, n.time_samples));
        std::ostringstream os;
        Metadata m = em.meta(name);
        m["branch"] = n.branch;
        if (ts.branch_warning) m["branch_warning"] = "true";
        if (json)
          os << time_series_json(ts, m);
        else
          write_time_series_csv(os, ts, m);
        em.emit_text(name, ext, os.str());
      } else if (name == "volterra") {
        TimeSeries ts = volterra_markovian(cs, n.bandwidth_gamma * gref,
                                           uniform_grid(t_max, n.time_samples));
        std::ostringstream os;
        if (json)
          os << time_series_json(ts, em.meta(name));
        else
          write_time_series_csv(os, ts, em.meta(name));
        em.emit_text(name, ext, os.str());
      } else if (name == "rates") {
        RateReport r;
        r.regime = detect_regime(cs.gamma(0, 0), cs.gamma(1, 1));
        std::tie(r.w1, r.t0) = rate_w1(cs.gamma(0, 0), cs.gamma(1, 1), cs.kappa(1, 0));
        r.w2 = rate_w2(cs.gamma(0, 0), cs.gamma(1, 1), cs.kappa(1, 0), 1.0);
        const GoldenRuleRate g =
            golden_rule_rate(cs.kappa(1, 0), cs.gamma(0, 0), cs.gamma(1, 1),
                             sc.atoms[0].omega_shifted, sc.atoms[1].omega_shifted, 1.0);
        r.w_golden = g.closed_form;
        r.ratio = r.w1 / r.w_golden;
        r.ratio_corrected = r.ratio * std::exp(cs.gamma(1, 1) * r.t0);
        const TimeSeries at_t0 = weak_amplitudes(cs, uniform_grid(r.t0, 2));
        r.p_a_t0 = at_t0.p_a[1];
        std::ostringstream os;
        if (json)
          os << rate_report_json(r, em.meta(name));
        else
          write_rate_report_text(os, r, em.meta(name));
        em.emit_text(name, ext, os.str());
      } else if (name == "spectrum-weak") {
        Eigen::Vector3cd fa = n.f_a, fb = n.f_b;
        if (sc.from_geometry && n.has_observation &&
            sc.source.kind() == GreenSource::Kind::Tabulated) {
          const auto [lo, hi] = sc.source.table().range();
          fa = emission_vector_weak(sc.source, n.observation, sc.atoms, 0, omega_a, lo, hi,
                                    n.rel_tol);
          fb = emission_vector_weak(sc.source, n.observation, sc.atoms, 1, omega_a, lo, hi,
                                    n.rel_tol);
        }
        SpectrumSeries sp = weak_spectrum(
            fa, fb, cs.delta(0, 1), cs.gamma(0, 0) + cs.gamma(0, 1),
            cs.gamma(0, 0) - cs.gamma(0, 1), omega_a,
            spectrum_grid(omega_a, n.spectrum_span_gamma * gref, n.spectrum_samples));
        std::ostringstream os;
        if (json)
          os << spectrum_json(sp, em.meta(name));
        else
          write_spectrum_csv(os, sp, em.meta(name));
        em.emit_text(name, ext, os.str());
      } else if (name == "spectrum-strong") {
        const CollectiveParams cp =
            collective_params(cs.gamma(0, 0), cs.gamma(0, 1), n.resonance.half_width);
        const Branch br = n.branch == "plus" ? Branch::Plus : Branch::Minus;
        const double omega_rabi = br == Branch::Plus ? cp.omega_plus : cp.omega_minus;
        const double gamma_weak = br == Branch::Plus ? cp.gamma_minus : cp.gamma_plus;
        Eigen::Vector3cd wa = n.f_a, wb = n.f_b;
        if (sc.from_geometry && n.has_observation &&
            sc.source.kind() == GreenSource::Kind::Tabulated) {
          wa = emission_vector_strong(sc.source, n.observation, sc.atoms, 0,
                                      n.resonance.omega_m, n.resonance.half_width, omega_rabi);
          wb = emission_vector_strong(sc.source, n.observation, sc.atoms, 1,
                                      n.resonance.omega_m, n.resonance.half_width, omega_rabi);
        }
        const double span =
            std::max(n.spectrum_span_gamma * gref, 2.0 * omega_rabi);
        SpectrumSeries sp = strong_spectrum(
            wa, wb, n.f_a, n.f_b, cs.delta(0, 1), omega_rabi, n.resonance.half_width,
            gamma_weak, br, omega_a, spectrum_grid(omega_a, span, n.spectrum_samples));
        std::ostringstream os;
        if (json)
          os << spectrum_json(sp, em.meta(name));
        else
          write_spectrum_csv(os, sp, em.meta(name));
        em.emit_text(name, ext, os.str());
      } else if (name == "spectrum-finite-T") {
        const double t_obs = n.observation_time > 0 ? n.observation_time : t_max;
        TimeSeries series = weak_amplitudes(cs, uniform_grid(t_obs, n.time_samples));
        const double min_rate = std::min(cs.gamma(0, 0), cs.gamma(1, 1));
        SpectrumSeries sp = finite_T_spectrum_numeric(
            series, n.f_a, n.f_b, sc.atoms[0].omega_shifted, sc.atoms[1].omega_shifted,
            spectrum_grid(omega_a, n.spectrum_span_gamma * gref, n.spectrum_samples),
            min_rate);
        std::ostringstream os;
        Metadata m = em.meta(name);
        m["observation_time"] = format_double(t_obs);
        if (sp.convergence_warning) m["convergence_warning"] = "true";
        if (json)
          os << spectrum_json(sp, m);
        else
          write_spectrum_csv(os, sp, m);
        em.emit_text(name, ext, os.str());
      }
    }

    ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["scenario"] = ordered_json::parse(sc.raw_text);
    ordered_json eff;
    eff["t_max"] = t_max;
    eff["time_samples"] = n.time_samples;
    eff["spectrum_span"] = n.spectrum_span_gamma * gref;
    eff["spectrum_samples"] = n.spectrum_samples;
    eff["bandwidth"] = n.bandwidth_gamma * gref;
    eff["rel_tol"] = n.rel_tol;
    eff["pv_window"] = n.pv_window;
    eff["gamma0"] = sc.gamma0;
    manifest["effective_numerics"] = std::move(eff);
    ordered_json outs = ordered_json::array();
    for (const auto& p : em.written()) outs.push_back(p);
    manifest["outputs"] = std::move(outs);
    em.emit_text("manifest", "json", manifest.dump(2) + "\n");
  } catch (...) {
    em.cleanup();
    throw;
  }
  return em.written();
}

std::string scenario_schema() {
  return R"sch(Scenario file (JSON object):

medium            optional, default vacuum
  type            "vacuum" | "constant" | "drude-lorentz" | "tabulated"
  epsilon         [re, im]           (constant; im >= 0)
  oscillators     [{omega_p, omega_t, gamma}, ...]  (drude-lorentz, rad/s)
  green_files     [{i, j, path}, ...]               (tabulated; site indices
                  0/1 = atoms, 2 = spectrum observation point; columnar text
                  "# omega Re(Gxx) Im(Gxx) ... Re(Gzz) Im(Gzz)", SI units)
  interp_order    1 | 3 (default 3)

atoms             required; exactly one of the two blocks
  geometry
    positions     [[x,y,z], [x,y,z]]  m
    dipoles       [[x,y,z], [x,y,z]]  C m
    omega         scalar or [wA, wB]  rad/s
    lamb_shift    bool (default false; applies the environment shift)
  overrides       coefficients in units of the free-space decay rate of the
                  reference dipole
    gamma_aa, gamma_bb, gamma_ab, delta_ab
    reference     {omega (rad/s), dipole (C m)}

analysis          required, nonempty list drawn from:
                  coupling dynamics-weak dynamics-strong volterra rates
                  spectrum-weak spectrum-strong spectrum-finite-T

numerics          optional
  t_max           s (0 = auto: t_max_gamma / max decay rate)
  t_max_gamma     default 10
  time_samples    default 2001
  spectrum_span_gamma   default 20 (half span in max-decay-rate units)
  spectrum_samples      default 2001
  bandwidth_gamma       default 100 (volterra memory bandwidth)
  rel_tol         default 1e-10
  pv_window       rad/s (0 = full window)
  resonance       {omega_m, half_width} rad/s; required by dynamics-strong
                  and spectrum-strong
  branch          "plus" | "minus" (default plus)
  observation_time      s (spectrum-finite-T; 0 = dynamics grid length)
  observation     [x,y,z] m (emission vectors from tabulated data when set)
  f_a, f_b        [x,y,z] fallback emission amplitudes (defaults [1,0,0],
                  [0.5,0,0]) used when no observation point is configured

output            optional
  directory       default "out"
  format          "csv" | "json" (default csv)

Outputs: one <analysis>.<format> per requested analysis plus manifest.json.
Existing files are an error unless --force is given.  Exit codes: 0 success,
2 configuration error, 3 numeric failure.
)sch";
}

}  // namespace rdd
