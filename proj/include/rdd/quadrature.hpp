#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace rdd::quad {

inline double norm_of(double x) { return std::abs(x); }
inline double norm_of(const std::complex<double>& x) { return std::abs(x); }
inline double norm_of(const Eigen::Vector3cd& v) { return v.norm(); }

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
auto gk15(F&& f, double a, double b, double* abs_err) {
  using V = std::decay_t<decltype(f(a))>;
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);

  const V fc = f(c);
  V kronrod = kWgk[7] * fc;
  V gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const V f1 = f(c - h * kXgk[j]);
    const V f2 = f(c + h * kXgk[j]);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= h;
  gauss *= h;
  if (abs_err) *abs_err = norm_of(V(kronrod - gauss));
  return V(kronrod);
}

template <class F>
auto adapt(F&& f, double a, double b, double tol, int depth) {
  double err = 0.0;
  auto whole = gk15(f, a, b, &err);
  if (err <= tol || depth <= 0) return whole;
  const double m = 0.5 * (a + b);
  return decltype(whole)(adapt(f, a, m, 0.5 * tol, depth - 1) +
                         adapt(f, m, b, 0.5 * tol, depth - 1));
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].  The tolerance is
/// relative to the first whole-interval estimate, floored by abs_tol.
template <class F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
               int max_depth = 40) {
  if (!(b > a)) throw std::invalid_argument("integration interval must have b > a");
  double err0 = 0.0;
  auto first = detail::gk15(f, a, b, &err0);
  double tol = std::max(abs_tol, rel_tol * std::max(norm_of(first), 1e-300));
  if (err0 <= tol) return first;
  return detail::adapt(f, a, b, tol, max_depth);
}

/// Cauchy principal value of \int_a^b f(w)/(w - pole) dw.
///
/// Symmetric exclusion windows {h, h/2, h/4} around the pole are removed,
/// each remainder is integrated adaptively, and the h -> 0 limit is taken
/// by Richardson extrapolation (leading error orders h and h^3).  The base
/// width is halved until successive extrapolants agree, so narrow structure
/// near the pole is resolved regardless of the window size.
template <class F>
auto pv_integral(F&& f, double a, double b, double pole, double rel_tol = 1e-10) {
  using V = std::decay_t<decltype(f(a))>;
  if (!(a < pole && pole < b))
    throw std::domain_error("principal-value pole must lie strictly inside the interval");
  auto g = [&](double w) { return V(f(w) / (w - pole)); };
  auto ring = [&](double h_out, double h_in) {
    return V(integrate(g, pole - h_out, pole - h_in, rel_tol) +
             integrate(g, pole + h_in, pole + h_out, rel_tol));
  };

  double h = std::min(pole - a, b - pole) / 4.0;
  // Shells at {h, h/2, h/4}; each halving reuses the previous shells plus
  // one ring integral.
  V s0 = V(integrate(g, a, pole - h, rel_tol) + integrate(g, pole + h, b, rel_tol));
  V s1 = V(s0 + ring(h, 0.5 * h));
  V s2 = V(s1 + ring(0.5 * h, 0.25 * h));
  auto extrapolate = [](const V& i0, const V& i1, const V& i2) {
    const V r1 = V(2.0 * i1 - i0);
    const V r2 = V(2.0 * i2 - i1);
    return V((8.0 * r2 - r1) / 7.0);
  };
  V best = extrapolate(s0, s1, s2);
  for (int k = 0; k < 48; ++k) {
    h *= 0.5;
    s0 = s1;
    s1 = s2;
    s2 = V(s1 + ring(0.5 * h, 0.25 * h));
    const V next = extrapolate(s0, s1, s2);
    const double scale = std::max({norm_of(next), norm_of(s2), 1e-300});
    const double diff = norm_of(V(next - best));
    best = next;
    if (diff <= std::max(10.0 * rel_tol, 1e-14) * scale) break;
  }
  return best;
}

}  // namespace rdd::quad
