#include "rdd/selftest.hpp"

#include <cmath>
#include <random>

#include "rdd/constants.hpp"
#include "rdd/coupling.hpp"
#include "rdd/dynamics.hpp"
#include "rdd/green.hpp"
#include "rdd/spectrum.hpp"

namespace rdd {

namespace {

struct Geometry {
  AtomConfig atoms;
  GreenSource source;
  bool lossless_bulk = false;
};

Geometry random_geometry(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos01(0.0, 1.0);

  const double omega = 2.5e15 * (0.5 + pos01(rng));  // rad/s
  const double wavelength = 2.0 * kPi * kSpeedOfLight / omega;

  auto random_unit = [&]() {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(unit(rng), unit(rng), unit(rng));
    } while (v.norm() < 1e-3);
    return Eigen::Vector3d(v / v.norm());
  };

  Geometry g{AtomConfig(2), GreenSource::analytic_vacuum(), false};
  const double dip = 3.33564e-30 * (0.5 + pos01(rng));  // C m
  const double sep = wavelength * (0.02 + 2.0 * pos01(rng));
  g.atoms[0].position = Eigen::Vector3d::Zero();
  g.atoms[1].position = sep * random_unit();
  g.atoms[0].dipole = (dip * random_unit()).cast<std::complex<double>>();
  g.atoms[1].dipole = (dip * random_unit()).cast<std::complex<double>>();
  g.atoms[0].omega = g.atoms[0].omega_shifted = omega;
  g.atoms[1].omega = g.atoms[1].omega_shifted = omega;

  if (pos01(rng) < 0.5) {
    g.source = GreenSource::analytic_bulk(PermittivityModel::constant({2.25, 0.0}));
    g.lossless_bulk = true;
  }
  return g;
}

}  // namespace

std::vector<SelfTestResult> run_selftest(int geometries) {
  std::mt19937 rng(12345u);
  SelfTestResult reciprocity{"green-reciprocity", 0, 0};
  SelfTestResult cauchy{"cauchy-schwarz-cross-decay", 0, 0};
  SelfTestResult kappa_id{"kappa-decomposition", 0, 0};
  SelfTestResult prob{"population-bounds", 0, 0};
  SelfTestResult nonneg{"spectrum-nonnegativity", 0, 0};

  for (int it = 0; it < geometries; ++it) {
    Geometry g = random_geometry(rng);
    const double omega = g.atoms[0].omega_shifted;

    const GreenTensor g_ab =
        g.source.query(g.atoms[0].position, g.atoms[1].position, 0, 1, omega);
    const GreenTensor g_ba =
        g.source.query(g.atoms[1].position, g.atoms[0].position, 1, 0, omega);
    ++reciprocity.checks;
    if ((g_ab - g_ba.transpose()).norm() > 1e-12 * std::max(g_ab.norm(), 1e-300))
      ++reciprocity.failures;

    const Eigen::Matrix2d gamma = decay_matrix(g.atoms, g.source);
    ++cauchy.checks;
    if (std::abs(gamma(0, 1)) >
        std::sqrt(gamma(0, 0) * gamma(1, 1)) * (1.0 + 1e-9))
      ++cauchy.failures;

    ++kappa_id.checks;
    try {
      (void)kappa_matrix(g.atoms, g.source);  // throws if the identity fails
    } catch (const std::exception&) {
      ++kappa_id.failures;
    }

    CouplingSet cs = build_coupling_set(g.atoms, g.source);
    const double gmax = std::max(cs.gamma(0, 0), cs.gamma(1, 1));
    const Eigen::VectorXd t = uniform_grid(5.0 / gmax, 801);
    ++prob.checks;
    try {
      TimeSeries ts = weak_amplitudes(cs, t);  // finalize checks the bound
      (void)ts;
    } catch (const std::exception&) {
      ++prob.failures;
    }

    ++nonneg.checks;
    const Eigen::Vector3cd f_a(1.0, 0.2, 0.0), f_b(0.3, -0.1, 0.05);
    const double delta = cs.delta(0, 1);
    const double span = std::max({10.0 * std::abs(delta), 10.0 * gmax, 1.0});
    const SpectrumSeries sp =
        weak_spectrum(f_a, f_b, delta, cs.gamma(0, 0) + cs.gamma(0, 1),
                      cs.gamma(0, 0) - cs.gamma(0, 1), omega, spectrum_grid(omega, span, 401));
    for (Eigen::Index k = 0; k < sp.s.size(); ++k) {
      if (!(sp.s[k] >= 0.0)) {
        ++nonneg.failures;
        break;
      }
    }
  }
  return {reciprocity, cauchy, kappa_id, prob, nonneg};
}

int report_selftest(std::ostream& os, int geometries) {
  int total = 0;
  for (const auto& r : run_selftest(geometries)) {
    total += r.failures;
    os << (r.failures == 0 ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.checks
       << " checks, " << r.failures << " failures)\n";
  }
  return total;
}

}  // namespace rdd
