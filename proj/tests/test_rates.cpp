#include <doctest.h>

#include <cmath>
#include <complex>

#include "rdd/rates.hpp"

using namespace rdd;
using cd = std::complex<double>;

TEST_CASE("closed-form transfer rate limits") {
  const cd kba(0.0, 0.02);  // |kappa| = 0.02, well below the decay rates

  SUBCASE("broad donor") {
    const auto [w1, t0] = rate_w1(1.0, 1e-6, kba);
    CHECK(t0 == doctest::Approx(std::log(4.0)).epsilon(1e-4));
    CHECK(w1 == doctest::Approx(std::norm(kba) / 1.0).epsilon(1e-4));
  }
  SUBCASE("equal rates") {
    const double g = 2.0;
    const auto [w1, t0] = rate_w1(g, g, kba);
    CHECK(g * t0 == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    const double expect =
        std::norm(kba) * 2.0 * (std::sqrt(2.0) - 1.0) * std::exp(-(2.0 - std::sqrt(2.0))) / g;
    CHECK(w1 == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("broad acceptor") {
    const auto [w1, t0] = rate_w1(1e-6, 1.0, kba);
    CHECK(w1 == doctest::Approx(std::norm(kba) / 1.0).epsilon(1e-4));
    CHECK(t0 > 0.0);
  }
  SUBCASE("general case continuity near equal rates") {
    const auto eq = rate_w1(1.0, 1.0, kba);
    const auto near = rate_w1(1.0, 1.0 + 1e-7, kba);
    CHECK(near.first == doctest::Approx(eq.first).epsilon(1e-5));
    CHECK(near.second == doctest::Approx(eq.second).epsilon(1e-5));
  }
}

TEST_CASE("empirical window detection on synthetic transients") {
  SUBCASE("agreement with the closed form across a coupling sweep") {
    const double gbb = 1.0;
    for (const double gab : {1e-3, 1e-2, 1e-1}) {
      const cd kba(-gab / 2.0, 1.5 * gab);
      CouplingSet cs = coupling_from_rates(gbb, gbb, gab, 1.5 * gab);
      const auto [w1, t0] = rate_w1(gbb, gbb, kba);
      const TimeSeries ts = weak_amplitudes(cs, uniform_grid(3.0, 40001));
      const auto [t0_emp, w1_emp] = rate_window_detect(ts);
      CHECK(t0_emp == doctest::Approx(t0).epsilon(0.03));
      CHECK(w1_emp == doctest::Approx(w1).epsilon(0.03));
    }
  }
  SUBCASE("monotone decay is rejected") {
    CouplingSet cs = coupling_from_rates(1.0, 1.0, 0.0, 0.0);
    const TimeSeries ts = weak_amplitudes(cs, uniform_grid(3.0, 1001));
    CHECK_THROWS_AS(rate_window_detect(ts), std::runtime_error);
  }
  SUBCASE("early-time growth is quadratic") {
    CouplingSet cs = coupling_from_rates(1.07, 1.07, 0.04, 0.06);
    const TimeSeries ts = weak_amplitudes(cs, uniform_grid(0.5, 20001));
    const double p = early_time_exponent(ts, 1e-4, 1e-2);
    CHECK(p == doctest::Approx(2.0).epsilon(0.025));
  }
}

TEST_CASE("adiabatic-elimination rate") {
  const cd kba(0.0, 0.05);
  CHECK(rate_w2(2.0, 2.0, kba, 1.0) ==
        doctest::Approx(2.0 * std::norm(kba) / 2.0).epsilon(1e-14));
  CHECK(rate_w2(1.0, 3.0, kba, 0.5) ==
        doctest::Approx(4.0 * std::norm(kba) / 4.0 * 0.5).epsilon(1e-14));
  CHECK(rate_w2(1.0, 3.0, cd(0, 0), 1.0) == 0.0);
}

TEST_CASE("golden-rule rate") {
  const cd kba(0.01, 0.03);
  SUBCASE("equal frequencies quadrature vs closed form") {
    const auto g = golden_rule_rate(kba, 1.3, 0.6, 2.5e15, 2.5e15, 1.0);
    CHECK(g.quadrature == doctest::Approx(g.closed_form).epsilon(1e-4));
    // The closed form itself is 4 |kappa|^2 / (gaa + gbb) * p_a.
    CHECK(g.closed_form == doctest::Approx(4.0 * std::norm(kba) / 1.9).epsilon(1e-12));
  }
  SUBCASE("matches the adiabatic rate when p_a equals the initial population") {
    const double p0 = 0.8;
    const auto g = golden_rule_rate(kba, 1.0, 2.0, 2.5e15, 2.5e15, p0);
    CHECK(g.closed_form == doctest::Approx(rate_w2(1.0, 2.0, kba, p0)).epsilon(1e-14));
  }
  SUBCASE("vanishing widths with detuned atoms suppress the rate") {
    const auto g = golden_rule_rate(kba, 0.0, 0.0, 2.5e15, 2.6e15, 1.0);
    CHECK(g.closed_form == 0.0);
  }
  SUBCASE("detuning suppression with finite widths") {
    const auto on = golden_rule_rate(kba, 1.0, 1.0, 2.5e15, 2.5e15, 1.0);
    const auto off = golden_rule_rate(kba, 1.0, 1.0, 2.5e15, 2.5e15 + 100.0, 1.0);
    CHECK(off.closed_form < 1e-3 * on.closed_form);
  }
  SUBCASE("kappa-squared scaling") {
    const auto base = golden_rule_rate(kba, 1.0, 1.0, 2.5e15, 2.5e15, 1.0);
    const auto twice = golden_rule_rate(2.0 * kba, 1.0, 1.0, 2.5e15, 2.5e15, 1.0);
    CHECK(twice.closed_form == doctest::Approx(4.0 * base.closed_form).epsilon(1e-12));
  }
}

TEST_CASE("regime ratio table") {
  const RateReport i = ratio_report(RateRegime::DonorBroad);
  CHECK(i.ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(i.p_a_t0 == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(std::abs(i.ratio_corrected - 1.0) < 0.01);

  const RateReport ii = ratio_report(RateRegime::Equal);
  CHECK(ii.ratio == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-6));
  CHECK(std::abs(ii.ratio_corrected - 0.74) < 0.01);

  const RateReport iii = ratio_report(RateRegime::AcceptorBroad);
  CHECK(iii.ratio == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(std::abs(iii.ratio_corrected - 1.0) < 0.01);
}

TEST_CASE("all three rates scale with the coupling squared") {
  const cd kba(0.004, 0.01);
  const double s = 3.0;
  const auto a1 = rate_w1(1.0, 0.5, kba);
  const auto a2 = rate_w1(1.0, 0.5, s * kba);
  CHECK(a2.first == doctest::Approx(s * s * a1.first).epsilon(1e-10));
  CHECK(rate_w2(1.0, 0.5, s * kba, 1.0) ==
        doctest::Approx(s * s * rate_w2(1.0, 0.5, kba, 1.0)).epsilon(1e-12));
  const auto g1 = golden_rule_rate(kba, 1.0, 0.5, 2.5e15, 2.5e15, 1.0);
  const auto g2 = golden_rule_rate(s * kba, 1.0, 0.5, 2.5e15, 2.5e15, 1.0);
  CHECK(g2.closed_form == doctest::Approx(s * s * g1.closed_form).epsilon(1e-12));
}
