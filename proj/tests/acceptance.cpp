// Acceptance checks: one pass/fail line per criterion, exit code equal to
// the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rdd/constants.hpp"
#include "rdd/coupling.hpp"
#include "rdd/dynamics.hpp"
#include "rdd/green.hpp"
#include "rdd/quadrature.hpp"
#include "rdd/rates.hpp"
#include "rdd/selftest.hpp"
#include "rdd/spectrum.hpp"

using namespace rdd;
using cd = std::complex<double>;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
  std::printf("%s  %d. %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Flagship-figure transient: single maximum, t^2 onset, transfer-rate
//    window slope vs the closed form, all in under a second.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const double gbb = 1.07, gab = 0.04, dab = 0.06;  // free-space-decay units
  CouplingSet cs = coupling_from_rates(gbb, gbb, gab, dab);
  const TimeSeries ts = weak_populations_symmetric(gbb, gab, dab, uniform_grid(12.0, 48001));

  int maxima = 0;
  for (Eigen::Index k = 1; k + 1 < ts.t.size(); ++k)
    if (ts.p_b[k] > ts.p_b[k - 1] && ts.p_b[k] >= ts.p_b[k + 1]) ++maxima;

  const TimeSeries early = weak_populations_symmetric(gbb, gab, dab, uniform_grid(0.02, 20001));
  const double expo = early_time_exponent(early, 1e-4, 1e-2);

  const auto [w1, t0] = rate_w1(gbb, gbb, cs.kappa(1, 0));
  const auto [t0_emp, w1_emp] = rate_window_detect(ts);
  const double slope_err = std::abs(w1_emp - w1) / w1;

  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = maxima == 1 && std::abs(expo - 2.0) <= 0.05 && slope_err <= 0.03 &&
                  sec < 1.0 && t0_emp > 0;
  report(1, "transfer transient: single maximum, t^2 onset, window slope", ok,
         fmt("maxima %.0f, exponent %.3f, slope err %.4f", maxima, expo, slope_err) +
             fmt(", %.2f s", sec));
}

// ---------------------------------------------------------------------------
// 2. Rate-ratio table per regime.
void criterion_2() {
  const RateReport i = ratio_report(RateRegime::DonorBroad);
  const RateReport ii = ratio_report(RateRegime::Equal);
  const RateReport iii = ratio_report(RateRegime::AcceptorBroad);
  const bool ok = std::abs(i.ratio - 1.0) <= 1e-6 &&
                  std::abs(ii.ratio - (std::sqrt(2.0) - 1.0)) <= 1e-6 &&
                  std::abs(iii.ratio - 0.25) <= 1e-6 &&
                  std::abs(i.ratio_corrected - 1.0) <= 0.01 &&
                  std::abs(ii.ratio_corrected - 0.74) <= 0.01 &&
                  std::abs(iii.ratio_corrected - 1.0) <= 0.01;
  report(2, "rate-ratio table", ok,
         fmt("ratios %.6f %.6f %.6f", i.ratio, ii.ratio, iii.ratio) +
             fmt(", corrected %.3f %.3f %.3f", i.ratio_corrected, ii.ratio_corrected,
                 iii.ratio_corrected));
}

// ---------------------------------------------------------------------------
// 3. Time-average table, closed form and numerical cycle average.
void criterion_3() {
  const double expect[3][3] = {{0.5, 0.5, 0.0}, {0.625, 0.125, 0.25}, {0.375, 0.375, 0.25}};
  const ExchangeCase cases[3] = {ExchangeCase::DipoleDominated, ExchangeCase::Balanced,
                                 ExchangeCase::FieldDominated};
  bool ok = true;
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const TimeAverages closed = time_averages(cases[c]);
    const TimeAverages numeric = time_averages_numeric(cases[c], 2.9, 0.8);
    ok = ok && closed.p_a == expect[c][0] && closed.p_b == expect[c][1] &&
         closed.p_l == expect[c][2];
    for (const double diff :
         {numeric.p_a - expect[c][0], numeric.p_b - expect[c][1], numeric.p_l - expect[c][2]}) {
      worst = std::max(worst, std::abs(diff));
      ok = ok && std::abs(diff) <= 1e-3;
    }
  }
  report(3, "time-average table", ok, fmt("worst numeric deviation %.2e", worst));
}

// ---------------------------------------------------------------------------
// 4. Volterra solver against the analytic weak solution in the broad-kernel
//    regime, plus 2nd-order self convergence.
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  CouplingSet cs = coupling_from_rates(1.0, 1.0, 0.3, 0.5);
  const double bw = 2.0e4;  // memory bandwidth / collective rate

  const Eigen::VectorXd t = uniform_grid(5.0, 10001);
  const TimeSeries num = volterra_markovian(cs, bw, t);
  const TimeSeries ana = weak_amplitudes(cs, t);
  double agree = 0.0;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    agree = std::max(agree, std::abs(num.p_a[k] - ana.p_a[k]));
    agree = std::max(agree, std::abs(num.p_b[k] - ana.p_b[k]));
  }

  // Self convergence on coarse grids where the time step dominates.
  auto residual = [&](Eigen::Index n, const TimeSeries& ref, Eigen::Index stride) {
    const TimeSeries s = volterra_markovian(cs, bw, uniform_grid(5.0, n + 1));
    double r = 0.0;
    const Eigen::Index factor = (ref.t.size() - 1) / n;
    for (Eigen::Index k = 0; k <= n; k += stride)
      r = std::max(r, std::abs(s.p_a[k] - ref.p_a[k * factor]));
    return r;
  };
  const TimeSeries ref = volterra_markovian(cs, bw, uniform_grid(5.0, 6401));
  const double r1 = residual(400, ref, 1);
  const double r2 = residual(800, ref, 1);
  const double ratio = r1 / r2;

  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = agree <= 1e-3 && ratio >= 2.8 && ratio <= 6.0 && sec < 30.0;
  report(4, "memory-kernel solver matches the analytic weak solution", ok,
         fmt("max deviation %.2e, halving ratio %.2f, %.1f s", agree, ratio, sec));
}

// ---------------------------------------------------------------------------
// 5. Damped vacuum Rabi oscillation from the Lorentzian kernel; residual
//    operator converges at 2nd order.
void criterion_5() {
  const double hw = 1.0;
  const double gamma_pm = 5000.0;  // Omega = 100 hw, sine admixture ~1%
  const double omega = std::sqrt(2.0 * gamma_pm * hw);
  const ResonanceProfile prof{2.5e15, hw};
  const double t_max = 3.0 * 2.0 * kPi / omega;
  const Eigen::VectorXd t = uniform_grid(t_max, 8001);
  const TimeSeries ts = volterra_lorentzian(gamma_pm, prof, 0.0, t);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const double expect =
        std::exp(-hw * t[k] / 2.0) * std::abs(std::cos(omega * t[k] / 2.0));
    worst = std::max(worst, std::abs(std::abs(ts.c_a[k]) - expect));
  }

  // Residual convergence on the analytic solution with negligible damping
  // so the finite-difference term dominates.
  StrongOdeParams p;
  p.omega_m = p.omega_tilde = 2.5e15;
  p.delta_signed = 0.0;
  p.half_width = 1e-3;
  p.omega_rabi = 40.0;
  auto analytic = [&](const Eigen::VectorXd& tg) {
    Eigen::VectorXcd c(tg.size());
    for (Eigen::Index k = 0; k < tg.size(); ++k)
      c[k] = std::exp(-p.half_width * tg[k] / 2.0) *
             std::cos(p.omega_rabi * tg[k] / 2.0) / std::sqrt(2.0);
    return c;
  };
  const Eigen::VectorXd t1 = uniform_grid(1.0, 401);
  const Eigen::VectorXd t2 = uniform_grid(1.0, 801);
  const double res1 = strong_ode_residual(analytic(t1), t1, p);
  const double res2 = strong_ode_residual(analytic(t2), t2, p);
  const double order_ratio = res1 / res2;

  const bool ok = worst <= 0.02 && order_ratio >= 2.8 && order_ratio <= 6.0;
  report(5, "vacuum Rabi oscillation and residual convergence", ok,
         fmt("max envelope error %.4f, residual halving ratio %.2f", worst, order_ratio));
}

// ---------------------------------------------------------------------------
// 6. Kramers-Kronig identity on a synthetic Lorentzian environment.
void criterion_6() {
  const double wc = 2.5e15, g = 2.5e13, amp = 1.0e20;
  auto h = [&](double w) { return amp / cd(wc - w, -g) + amp / cd(wc + w, g); };
  const int n = 4000;
  Eigen::VectorXd grid(n);
  std::vector<GreenTensor> vals(n);
  const double lo = 0.1 * wc, hi = 5.0 * wc;
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  for (int i = 0; i < n; ++i) {
    const double w = lo + (hi - lo) * i / (n - 1);
    grid[i] = w;
    GreenTensor m = GreenTensor::Zero();
    m(0, 0) = c2 / (w * w) * h(w);
    vals[i] = m;
  }
  TabulatedGreen table;
  table.add_pair(0, 1, grid, vals);
  table.add_pair(1, 0, grid, vals);
  const auto src = GreenSource::tabulated(std::move(table));

  const double d = 3.33564e-30, wt = 0.8 * wc;
  AtomConfig atoms(2);
  atoms[0].position = {0, 0, 0};
  atoms[1].position = {0, 0, 2e-7};
  atoms[0].dipole = atoms[1].dipole = Eigen::Vector3cd(d, 0, 0);
  atoms[0].omega = atoms[0].omega_shifted = wt;
  atoms[1].omega = atoms[1].omega_shifted = wt;

  const auto pv = pv_components(atoms, src, 0, 1, wt);
  const double lhs = pv.minus + pv.plus;
  const double rhs = dd_shift(atoms, src, 0, 1);
  const double rel = std::abs(lhs - rhs) / std::abs(rhs);
  report(6, "Kramers-Kronig identity of the shift integrals", rel <= 1e-4,
         fmt("relative mismatch %.2e", rel));
}

// ---------------------------------------------------------------------------
// 7. Bulk asymptotics of the full shift plus the absorbing envelope.
void criterion_7() {
  const double w = 2.5e15, d = 3.33564e-30;
  auto atoms_at = [&](double R) {
    AtomConfig a(2);
    a[0].position = {0, 0, 0};
    a[1].position = {0, 0, R};
    a[0].dipole = a[1].dipole = Eigen::Vector3cd(d, 0, 0);
    a[0].omega = a[0].omega_shifted = w;
    a[1].omega = a[1].omega_shifted = w;
    return a;
  };

  const double r_short = 0.01 * kSpeedOfLight / w;
  const double r_long = 50.0 * kSpeedOfLight / w;
  const auto vac_src = GreenSource::analytic_vacuum();
  const auto vac = PermittivityModel::vacuum();
  const auto med = PermittivityModel::constant(cd(2.25, 0.0));
  const auto med_src = GreenSource::analytic_bulk(med);

  const AtomConfig as = atoms_at(r_short);
  const double short_err = std::abs(dd_shift(as, vac_src, 0, 1) /
                                        asymptotic_delta_short(as[0], as[1], vac, w) -
                                    1.0);
  const AtomConfig al = atoms_at(r_long);
  const double long_err = std::abs(dd_shift(al, med_src, 0, 1) /
                                       asymptotic_delta_long(al[0], al[1], med, w) -
                                   1.0);

  // Absorbing envelope: sample the full shift where the propagation cosine
  // is at an extremum and fit log(|delta| R) against R.
  const cd nl(1.5, 0.01);
  const auto lossy = PermittivityModel::constant(nl * nl);
  const auto lossy_src = GreenSource::analytic_bulk(lossy);
  std::vector<double> xs, ys;
  for (int k = 24; k <= 72; k += 2) {
    const double R = k * kPi * kSpeedOfLight / (nl.real() * w);
    const AtomConfig a = atoms_at(R);
    const double val = std::abs(dd_shift(a, lossy_src, 0, 1));
    xs.push_back(R);
    ys.push_back(std::log(val * R));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double nn = double(xs.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double slope_expect = -nl.imag() * w / kSpeedOfLight;
  const double slope_err = std::abs(slope / slope_expect - 1.0);

  const bool ok = short_err <= 0.01 && long_err <= 0.05 && slope_err <= 0.02;
  report(7, "bulk short/long-distance asymptotics and absorption envelope", ok,
         fmt("short %.4f, long %.4f, envelope slope %.4f", short_err, long_err, slope_err));
}

// ---------------------------------------------------------------------------
// 8. Doublet, triplet, and the finite-observation-time oracle.
void criterion_8() {
  const double wa = 1.0e5, gaa = 1.0, gab = 0.3, dab = 16.0;
  const double gp = gaa + gab, gm = gaa - gab;
  const Eigen::Vector3cd fa(1.0, 0.0, 0.0), fb(0.0, 0.0, 0.0);
  const Eigen::VectorXd grid = spectrum_grid(wa, 6.0 * dab, 8001);
  const double step = grid[1] - grid[0];

  const SpectrumSeries weak = weak_spectrum(fa, fb, dab, gp, gm, wa, grid);
  const auto wp = peak_analysis(weak);
  bool ok = wp.size() == 2;
  double sep_err = 1e300, wid_err = 1e300;
  if (ok) {
    sep_err = std::abs((wp[1].position - wp[0].position) - 2 * dab);
    wid_err = std::max(std::abs(wp[0].half_width - gp / 2) / (gp / 2),
                       std::abs(wp[1].half_width - gm / 2) / (gm / 2));
    ok = sep_err <= step && wid_err <= 0.05;
  }

  const double omega = 20.0, hw = 1.0;
  const Eigen::Vector3cd v(1.0, 0.0, 0.0);
  const SpectrumSeries strong = strong_spectrum(v, v, v, 0.4 * v, dab * 2.5, omega, hw, gm,
                                                Branch::Plus, wa, spectrum_grid(wa, 80.0, 40001));
  const auto sp = peak_analysis(strong);
  bool strong_ok = sp.size() == 3;
  if (strong_ok) {
    const double split = sp[1].position - sp[0].position;
    // Overlapping tails pull each split line by ~(hw/2)^2/omega.
    strong_ok = std::abs(split - omega) <=
                2 * (strong.omega_s[1] - strong.omega_s[0]) + hw * hw / omega;
  }

  CouplingSet cs = coupling_from_rates(gaa, gaa, gab, dab);
  const double T = 20.0 / gm;
  const TimeSeries series = weak_amplitudes(cs, uniform_grid(T, 60001));
  const Eigen::Vector3cd fb2(0.35, 0.0, 0.0);
  const SpectrumSeries num = finite_T_spectrum_numeric(series, fa, fb2, wa, wa, grid, gm);
  const SpectrumSeries ana = weak_spectrum(fa, fb2, dab, gp, gm, wa, grid);
  const auto pn = peak_analysis(num);
  const auto pa = peak_analysis(ana);
  bool ft_ok = pn.size() == pa.size() && pn.size() == 2;
  double height_err = 1e300;
  if (ft_ok) {
    height_err = 0.0;
    for (size_t i = 0; i < pn.size(); ++i) {
      ft_ok = ft_ok && std::abs(pn[i].position - pa[i].position) <= step;
      // Height at the analytic peak position.
      Eigen::Index kbest = 0;
      (grid.array() - pa[i].position).abs().minCoeff(&kbest);
      height_err = std::max(height_err, std::abs(num.s[kbest] / ana.s[kbest] - 1.0));
    }
    ft_ok = ft_ok && height_err <= 0.05;
  }

  report(8, "spectral doublet, triplet, and finite-time oracle", ok && strong_ok && ft_ok,
         fmt("doublet width err %.3f, ", wid_err) + fmt("peaks %.0f, ", double(sp.size())) +
             fmt("height err %.3f", height_err));
}

// ---------------------------------------------------------------------------
// 9. Invariant suite across randomized geometries.
void criterion_9() {
  int total = 0;
  std::string detail;
  for (const auto& r : run_selftest(100)) {
    total += r.failures;
    if (r.failures) detail += r.name + fmt(": %.0f ", double(r.failures));
  }
  report(9, "invariant suite over 100 randomized geometries", total == 0,
         total == 0 ? "zero failures" : detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  return failures;
}
