#pragma once

#include <complex>
#include <utility>

#include "rdd/dynamics.hpp"

namespace rdd {

enum class RateRegime {
  DonorBroad,  // Gamma_AA >> Gamma_BB
  Equal,       // Gamma_AA = Gamma_BB
  AcceptorBroad,  // Gamma_BB >> Gamma_AA
};

struct RateReport {
  double w1 = 0.0;        // 1/s
  double t0 = 0.0;        // s
  double w2 = 0.0;        // 1/s
  double w_golden = 0.0;  // 1/s
  double ratio = 0.0;            // w1 / w
  double ratio_corrected = 0.0;  // w1 / w * e^{Gamma_BB t0}
  double p_a_t0 = 0.0;
  RateRegime regime = RateRegime::Equal;
};

/// Transfer rate from the exact transient: the slope of P_B at its first
/// inflection time t0.  Closed forms; the equal-rate case uses its own limit
/// Gamma t0 = 2 - sqrt(2).
std::pair<double, double> rate_w1(double gamma_aa, double gamma_bb,
                                  std::complex<double> kappa_ba);

/// Empirical (t0, slope) from a sampled P_B: first zero crossing of the
/// smoothed discrete 2nd derivative with positive slope.
std::pair<double, double> rate_window_detect(const TimeSeries& series,
                                             int smooth_window = 5);

/// Least-squares exponent of P_B ~ t^p over [t_lo, t_hi] (log-log fit).
double early_time_exponent(const TimeSeries& series, double t_lo, double t_hi);

/// Adiabatic-elimination rate w2 = 4 |kappa_ba|^2 / (G_aa + G_bb) * P_A0.
double rate_w2(double gamma_aa, double gamma_bb, std::complex<double> kappa_ba,
               double p_a0);

struct GoldenRuleRate {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// Golden-rule rate with Lorentzian level densities of widths gamma_aa,
/// gamma_bb centered at omega_a, omega_b.  The closed form is
/// 2 pi |kappa|^2 p_a * overlap; the quadrature value evaluates the density
/// overlap numerically (truncated at 40 widths, analytic tail correction).
GoldenRuleRate golden_rule_rate(std::complex<double> kappa_ba, double gamma_aa,
                                double gamma_bb, double omega_a, double omega_b,
                                double p_a);

/// Closed-form comparison of w1 against the golden-rule rate per regime,
/// including the decay-corrected ratio w1/w * e^{Gamma_BB t0}.
RateReport ratio_report(RateRegime regime);

}  // namespace rdd
