#include "rdd/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rdd/constants.hpp"

namespace rdd {

namespace {

double sqr(double x) { return x * x; }

}  // namespace

std::pair<double, double> rate_w1(double gamma_aa, double gamma_bb,
                                  std::complex<double> kappa_ba) {
  if (!(gamma_aa > 0.0) || !(gamma_bb > 0.0))
    throw std::invalid_argument("rate_w1 requires positive decay rates");
  const double k2 = std::norm(kappa_ba);
  const double gmax = std::max(gamma_aa, gamma_bb);

  if (std::abs(gamma_aa - gamma_bb) < 1e-9 * gmax) {
    const double g = 0.5 * (gamma_aa + gamma_bb);
    const double t0 = (2.0 - std::sqrt(2.0)) / g;
    const double w1 =
        2.0 * (std::sqrt(2.0) - 1.0) * k2 * std::exp(-(2.0 - std::sqrt(2.0))) / g;
    return {w1, t0};
  }

  // P_B(t) = |kappa|^2 (e^{-q t} - e^{-p t})^2 / (p - q)^2 with p = max/2,
  // q = min/2 (symmetric under label swap). The transfer window sits at the
  // inflection of P_B, where r = e^{-(p-q)t} solves
  //   2 p^2 r^2 - (p+q)^2 r + 2 q^2 = 0.
  const double p = 0.5 * gmax;
  const double q = 0.5 * std::min(gamma_aa, gamma_bb);
  const double g = p - q;
  // Discriminant factored to avoid cancellation near equal rates.
  const double root = std::sqrt((p + q) * (p + q) + 4.0 * p * q);
  const double r_minus_1 = g * (root - (3.0 * p + q)) / (4.0 * p * p);
  const double t0 = -std::log1p(r_minus_1) / g;
  const double w1 =
      (2.0 * k2 / (g * g)) * std::exp(-2.0 * q * t0) * (-r_minus_1) * (g + p * r_minus_1);
  return {w1, t0};
}

std::pair<double, double> rate_window_detect(const TimeSeries& series, int smooth_window) {
  const Eigen::VectorXd& t = series.t;
  const Eigen::VectorXd& pb = series.p_b;
  const Eigen::Index n = t.size();
  if (n < 7) throw std::invalid_argument("series too short for inflection detection");
  if (smooth_window < 1 || smooth_window % 2 == 0)
    throw std::invalid_argument("smoothing window must be odd and positive");
  const double dt = t[1] - t[0];

  const int half = smooth_window / 2;
  Eigen::VectorXd smooth(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, k - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, k + half);
    smooth[k] = pb.segment(lo, hi - lo + 1).mean();
  }

  Eigen::VectorXd d1 = Eigen::VectorXd::Zero(n), d2 = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    d1[k] = (smooth[k + 1] - smooth[k - 1]) / (2.0 * dt);
    d2[k] = (smooth[k + 1] - 2.0 * smooth[k] + smooth[k - 1]) / (dt * dt);
  }

  for (Eigen::Index k = 1; k + 2 < n; ++k) {
    if (d2[k] > 0.0 && d2[k + 1] <= 0.0 && d1[k] > 0.0) {
      const double frac = d2[k] / (d2[k] - d2[k + 1]);
      const double t0 = t[k] + frac * dt;
      const double slope = d1[k] + frac * (d1[k + 1] - d1[k]);
      return {t0, slope};
    }
  }
  throw std::runtime_error(
      "no inflection with positive slope found: series is not in a rate window");
}

double early_time_exponent(const TimeSeries& series, double t_lo, double t_hi) {
  if (!(0.0 < t_lo && t_lo < t_hi))
    throw std::invalid_argument("need 0 < t_lo < t_hi for the exponent fit");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (Eigen::Index k = 0; k < series.t.size(); ++k) {
    const double t = series.t[k];
    if (t < t_lo || t > t_hi || series.p_b[k] <= 0.0) continue;
    const double x = std::log(t);
    const double y = std::log(series.p_b[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) throw std::invalid_argument("exponent fit window holds fewer than 3 samples");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double rate_w2(double gamma_aa, double gamma_bb, std::complex<double> kappa_ba,
               double p_a0) {
  if (!(gamma_aa + gamma_bb > 0.0))
    throw std::invalid_argument("rate_w2 requires a positive total width");
  return 4.0 * std::norm(kappa_ba) / (gamma_aa + gamma_bb) * p_a0;
}

GoldenRuleRate golden_rule_rate(std::complex<double> kappa_ba, double gamma_aa,
                                double gamma_bb, double omega_a, double omega_b,
                                double p_a) {
  GoldenRuleRate out;
  const double k2 = std::norm(kappa_ba);
  const double gs = 0.5 * (gamma_aa + gamma_bb);
  const double det = omega_a - omega_b;
  if (gs <= 0.0) {
    if (det == 0.0)
      throw std::domain_error("golden rule diverges for zero widths at equal frequencies");
    out.closed_form = 0.0;
    out.quadrature = 0.0;
    return out;
  }
  const double overlap_closed = (1.0 / kPi) * gs / (det * det + gs * gs);
  out.closed_form = 2.0 * kPi * k2 * p_a * overlap_closed;

  // Numerical density overlap, truncated at +-40 full widths with the
  // analytic 1/nu^4 tail added back. Integrate in the detuning from the
  // midpoint so the step stays resolvable at optical frequencies.
  const double wmax = std::max(gamma_aa, gamma_bb);
  const double mid = 0.5 * (omega_a + omega_b);
  const double range = 0.5 * std::abs(det) + 40.0 * wmax;
  const double ca = omega_a - mid;
  const double cb = omega_b - mid;
  auto lorentz = [](double nu, double center, double gamma) {
    return (1.0 / kPi) * (0.5 * gamma) / (sqr(nu - center) + sqr(0.5 * gamma));
  };
  const int n = 200001;
  const double h = 2.0 * range / (n - 1);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double nu = -range + k * h;
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    acc += w * lorentz(nu, ca, gamma_aa) * lorentz(nu, cb, gamma_bb);
  }
  acc *= h;
  const double tail_amp = gamma_aa * gamma_bb / (4.0 * kPi * kPi);
  acc += 2.0 * tail_amp / (3.0 * std::pow(range, 3));
  out.quadrature = 2.0 * kPi * k2 * p_a * acc;
  return out;
}

RateReport ratio_report(RateRegime regime) {
  RateReport r;
  r.regime = regime;
  switch (regime) {
    case RateRegime::DonorBroad:
      // Gamma_AA t0 = ln 4; acceptor decay negligible over t0.
      r.ratio = 1.0;
      r.p_a_t0 = 0.25;
      r.ratio_corrected = 1.0;
      break;
    case RateRegime::Equal:
      r.ratio = std::sqrt(2.0) - 1.0;
      r.p_a_t0 = std::exp(-(2.0 - std::sqrt(2.0)));
      r.ratio_corrected = (std::sqrt(2.0) - 1.0) * std::exp(2.0 - std::sqrt(2.0));
      break;
    case RateRegime::AcceptorBroad:
      // Gamma_BB t0 = ln 4; donor decay negligible, P_A(t0) ~ 1.
      r.ratio = 0.25;
      r.p_a_t0 = 1.0;
      r.ratio_corrected = 1.0;
      break;
  }
  return r;
}

}  // namespace rdd
