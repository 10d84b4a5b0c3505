#include "rdd/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rdd/constants.hpp"
#include "rdd/quadrature.hpp"

namespace rdd {

namespace {

using cd = std::complex<double>;

double check_uniform(const Eigen::VectorXd& t) {
  if (t.size() < 2) throw std::invalid_argument("time grid needs at least two samples");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw std::invalid_argument("time grid must be increasing");
  for (Eigen::Index k = 1; k + 1 < t.size(); ++k) {
    if (std::abs((t[k + 1] - t[k]) - dt) > 1e-9 * dt)
      throw std::invalid_argument("time grid must be uniform");
  }
  return dt;
}

cd coshc(cd x) { return std::cosh(x); }

/// sinh(x)/x, stable near 0.
cd sinhc(cd x) {
  if (std::abs(x) < 1e-6) {
    const cd x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

/// Exponential quadrature weights for kernels e^{-r tau}, z = r dt:
///   g1 = (1 - e^{-z})/z, g2 = (z - 1 + e^{-z})/z^2,
///   g3 = (z^2/2 - z + 1 - e^{-z})/z^3,
/// stable for small |z| via the series of g3.
void exp_phis(cd z, cd* e, cd* g1, cd* g2, cd* g3) {
  *e = std::exp(-z);
  if (std::abs(z) < 0.5) {
    cd term = cd(1.0 / 6.0), sum = term;
    for (int k = 1; k < 24; ++k) {
      term *= -z / static_cast<double>(k + 3);
      sum += term;
      if (std::abs(term) < 1e-20) break;
    }
    *g3 = sum;
    *g2 = 0.5 - z * sum;
    *g1 = 1.0 - z * (*g2);
  } else {
    *g1 = (1.0 - *e) / z;
    *g2 = (1.0 - *g1) / z;
    *g3 = (0.5 - *g2) / z;
  }
}

}  // namespace

void TimeSeries::finalize_populations() {
  p_a = c_a.cwiseAbs2();
  p_b = c_b.cwiseAbs2();
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const double total = p_a[k] + p_b[k];
    if (total > 1.0 + 1e-9) {
      std::ostringstream os;
      os << "population bound violated: P_A + P_B = " << total << " at t = " << t[k];
      throw std::runtime_error(os.str());
    }
  }
}

Eigen::VectorXd uniform_grid(double t_max, Eigen::Index samples) {
  if (!(t_max > 0.0) || samples < 2)
    throw std::invalid_argument("uniform_grid requires t_max > 0 and >= 2 samples");
  return Eigen::VectorXd::LinSpaced(samples, 0.0, t_max);
}

TimeSeries weak_amplitudes(const CouplingSet& cs, const Eigen::VectorXd& t_grid) {
  check_uniform(t_grid);
  const double ga = cs.gamma(0, 0);
  const double gb = cs.gamma(1, 1);
  const double s = 0.5 * (ga + gb);
  const double g = 0.5 * (ga - gb);
  const cd d = std::sqrt(cd(g * g, 0.0) + 4.0 * cs.kappa(0, 1) * cs.kappa(1, 0));

  TimeSeries ts;
  ts.t = t_grid;
  const Eigen::Index n = t_grid.size();
  ts.c_a.resize(n);
  ts.c_b.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = t_grid[k];
    const double env = std::exp(-0.5 * s * t);
    const cd x = 0.5 * d * t;
    // Even combinations of D: branch-free and smooth through D = 0.
    ts.c_a[k] = env * (coshc(x) - 0.5 * g * t * sinhc(x));
    ts.c_b[k] = env * cs.kappa(1, 0) * t * sinhc(x);
  }
  ts.finalize_populations();
  return ts;
}

TimeSeries weak_populations_symmetric(double gamma_bb, double gamma_ab, double delta_ab,
                                      const Eigen::VectorXd& t_grid) {
  check_uniform(t_grid);
  TimeSeries ts;
  ts.t = t_grid;
  const Eigen::Index n = t_grid.size();
  ts.c_a.resize(n);
  ts.c_b.resize(n);
  ts.p_a.resize(n);
  ts.p_b.resize(n);
  const cd kap(-0.5 * gamma_ab, delta_ab);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = t_grid[k];
    const double env = std::exp(-0.5 * gamma_bb * t);
    ts.c_a[k] = env * std::cosh(kap * t);
    ts.c_b[k] = env * std::sinh(kap * t);
    const double damp = std::exp(-gamma_bb * t);
    ts.p_a[k] = 0.5 * (std::cosh(gamma_ab * t) + std::cos(2.0 * delta_ab * t)) * damp;
    ts.p_b[k] = 0.5 * (std::cosh(gamma_ab * t) - std::cos(2.0 * delta_ab * t)) * damp;
  }
  return ts;
}

DensityTrajectory density_matrix_weak(const CouplingSet& cs, const Eigen::VectorXd& t_grid,
                                      double rho_aa0, double rho_bb0, cd rho_ab0) {
  const double dt = check_uniform(t_grid);
  const double rate_scale =
      std::max({cs.gamma(0, 0), cs.gamma(1, 1), 2.0 * std::abs(cs.kappa(0, 1)),
                2.0 * std::abs(cs.kappa(1, 0))});
  if (dt * rate_scale > 2.5) {
    std::ostringstream os;
    os << "density_matrix_weak: step " << dt << " exceeds the stability bound 2.5/"
       << rate_scale << " s";
    throw std::invalid_argument(os.str());
  }

  const double gaa = cs.gamma(0, 0), gbb = cs.gamma(1, 1);
  const cd kab = cs.kappa(0, 1), kba = cs.kappa(1, 0);
  using State = Eigen::Vector3cd;  // (rho_aa, rho_bb, rho_ab)
  auto deriv = [&](const State& x) {
    State dx;
    dx[0] = -gaa * x[0] + kab * std::conj(x[2]) + std::conj(kab * std::conj(x[2]));
    dx[1] = -gbb * x[1] + kba * x[2] + std::conj(kba * x[2]);
    dx[2] = -0.5 * (gaa + gbb) * x[2] + kab * x[1] + std::conj(kba) * x[0];
    return dx;
  };

  DensityTrajectory out;
  out.t = t_grid;
  const Eigen::Index n = t_grid.size();
  out.rho_aa.resize(n);
  out.rho_bb.resize(n);
  out.rho_ab.resize(n);
  State x(cd(rho_aa0, 0.0), cd(rho_bb0, 0.0), rho_ab0);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.rho_aa[k] = x[0].real();
    out.rho_bb[k] = x[1].real();
    out.rho_ab[k] = x[2];
    if (k + 1 == n) break;
    const State k1 = deriv(x);
    const State k2 = deriv(x + 0.5 * dt * k1);
    const State k3 = deriv(x + 0.5 * dt * k2);
    const State k4 = deriv(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

TimeSeries strong_populations(const CollectiveParams& cp, double half_width, double delta_ab,
                              Branch strong_branch, const Eigen::VectorXd& t_grid) {
  check_uniform(t_grid);
  if (!(half_width >= 0.0)) throw std::invalid_argument("half width must be nonnegative");

  const double omega_strong =
      strong_branch == Branch::Plus ? cp.omega_plus : cp.omega_minus;
  const double omega_weak =
      strong_branch == Branch::Plus ? cp.omega_minus : cp.omega_plus;
  const double gamma_weak =
      strong_branch == Branch::Plus ? cp.gamma_minus : cp.gamma_plus;
  if (omega_strong < omega_weak)
    throw std::invalid_argument(
        "designated strong branch has the smaller Rabi frequency; branch flag inconsistent");

  TimeSeries ts;
  if (half_width > 0.0 &&
      (omega_strong < 10.0 * half_width || omega_weak > 0.1 * half_width))
    ts.branch_warning = true;

  ts.t = t_grid;
  const Eigen::Index n = t_grid.size();
  ts.c_a.resize(n);
  ts.c_b.resize(n);
  ts.c_plus.resize(n);
  ts.c_minus.resize(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = t_grid[k];
    const double c_strong =
        inv_sqrt2 * std::exp(-0.5 * half_width * t) * std::cos(0.5 * omega_strong * t);
    const double c_weak = inv_sqrt2 * std::exp(-0.5 * gamma_weak * t);
    const cd cp_amp = strong_branch == Branch::Plus ? cd(c_strong) : cd(c_weak);
    const cd cm_amp = strong_branch == Branch::Plus ? cd(c_weak) : cd(c_strong);
    ts.c_plus[k] = cp_amp;
    ts.c_minus[k] = cm_amp;
    const cd phase = std::exp(cd(0.0, delta_ab * t));
    ts.c_a[k] = inv_sqrt2 * (cp_amp * phase + cm_amp / phase);
    ts.c_b[k] = inv_sqrt2 * (cp_amp * phase - cm_amp / phase);
  }
  ts.finalize_populations();
  return ts;
}

TimeAverages time_averages(ExchangeCase c) {
  switch (c) {
    case ExchangeCase::DipoleDominated:
      return {0.5, 0.5, 0.0};
    case ExchangeCase::Balanced:
      return {5.0 / 8.0, 1.0 / 8.0, 2.0 / 8.0};
    case ExchangeCase::FieldDominated:
      return {3.0 / 8.0, 3.0 / 8.0, 2.0 / 8.0};
  }
  return {};
}

TimeAverages time_averages_numeric(ExchangeCase c, double omega_rabi, double delta_ab,
                                   int samples) {
  if (samples < 3) throw std::invalid_argument("need at least 3 samples per cycle");
  double period = 0.0;
  std::function<double(double)> pa, pb;
  switch (c) {
    case ExchangeCase::DipoleDominated: {
      if (delta_ab == 0.0) throw std::invalid_argument("case needs delta_ab != 0");
      period = kPi / std::abs(delta_ab);
      pa = [=](double t) { return std::pow(std::cos(delta_ab * t), 2); };
      pb = [=](double t) { return std::pow(std::sin(delta_ab * t), 2); };
      break;
    }
    case ExchangeCase::Balanced: {
      if (omega_rabi == 0.0) throw std::invalid_argument("case needs omega_rabi != 0");
      period = 2.0 * kPi / std::abs(omega_rabi);
      pa = [=](double t) {
        return 0.25 * (1.0 + 3.0 * std::pow(std::cos(0.5 * omega_rabi * t), 2));
      };
      pb = [=](double t) {
        return 0.25 * (1.0 - std::pow(std::cos(0.5 * omega_rabi * t), 2));
      };
      break;
    }
    case ExchangeCase::FieldDominated: {
      if (omega_rabi == 0.0) throw std::invalid_argument("case needs omega_rabi != 0");
      period = 4.0 * kPi / std::abs(omega_rabi);
      pa = [=](double t) { return std::pow(std::cos(0.25 * omega_rabi * t), 4); };
      pb = [=](double t) { return std::pow(std::sin(0.25 * omega_rabi * t), 4); };
      break;
    }
  }
  double sa = 0.0, sb = 0.0;
  const double h = period / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    const double w = (k == 0 || k == samples - 1) ? 0.5 : 1.0;
    sa += w * pa(k * h);
    sb += w * pb(k * h);
  }
  TimeAverages avg;
  avg.p_a = sa * h / period;
  avg.p_b = sb * h / period;
  avg.p_l = 1.0 - avg.p_a - avg.p_b;
  return avg;
}

TimeSeries volterra_single_exponential(cd amp, cd rate, const Eigen::VectorXd& t_grid) {
  const double dt = check_uniform(t_grid);
  cd decay, g1, g2, g3;
  exp_phis(rate * dt, &decay, &g1, &g2, &g3);
  const double dt2 = dt * dt;

  const Eigen::Index n = t_grid.size();
  TimeSeries ts;
  ts.t = t_grid;
  ts.c_a.resize(n);
  ts.c_b = Eigen::VectorXcd::Zero(n);
  cd c = 1.0, mem = 0.0;
  ts.c_a[0] = c;
  // Product-integration step: the memory contribution over each step is
  // integrated exactly for a linearly interpolated C, so the accuracy is
  // 2nd order uniformly in the kernel stiffness.
  const cd lhs = 1.0 - dt2 * amp * g3;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const cd rhs = c + dt2 * amp * (g2 - g3) * c + dt * g1 * mem;
    const cd c_next = rhs / lhs;
    mem = decay * mem + dt * amp * ((g1 - g2) * c + g2 * c_next);
    c = c_next;
    ts.c_a[k + 1] = c;
  }
  ts.finalize_populations();
  return ts;
}

TimeSeries volterra_pair_exponential(const Eigen::Matrix2cd& amp, cd rate,
                                     const Eigen::Matrix2cd& coherent,
                                     const Eigen::VectorXd& t_grid) {
  const double dt = check_uniform(t_grid);
  cd decay, g1, g2, g3;
  exp_phis(rate * dt, &decay, &g1, &g2, &g3);
  const double dt2 = dt * dt;

  const Eigen::Index n = t_grid.size();
  TimeSeries ts;
  ts.t = t_grid;
  ts.c_a.resize(n);
  ts.c_b.resize(n);
  Eigen::Vector2cd c(1.0, 0.0), mem(0.0, 0.0);
  ts.c_a[0] = c[0];
  ts.c_b[0] = c[1];
  // Product-integration step (see volterra_single_exponential); the coherent
  // term is handled by the trapezoidal rule.
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd lhs = id - 0.5 * dt * coherent - dt2 * g3 * amp;
  const Eigen::PartialPivLU<Eigen::Matrix2cd> lu(lhs);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const Eigen::Vector2cd rhs =
        c + 0.5 * dt * (coherent * c) + dt2 * (g2 - g3) * (amp * c) + dt * g1 * mem;
    const Eigen::Vector2cd c_next = lu.solve(rhs);
    mem = decay * mem + dt * (amp * ((g1 - g2) * c + g2 * c_next));
    c = c_next;
    ts.c_a[k + 1] = c[0];
    ts.c_b[k + 1] = c[1];
  }
  ts.finalize_populations();
  return ts;
}

TimeSeries volterra_pair(const std::function<Eigen::Matrix2cd(double)>& memory,
                         const Eigen::Matrix2cd& coherent, const Eigen::VectorXd& t_grid,
                         const VolterraOptions& opts) {
  const double dt = check_uniform(t_grid);
  const Eigen::Index n = t_grid.size();
  if (n > opts.max_steps) {
    std::ostringstream os;
    os << "volterra grid of " << n << " steps exceeds the memory cap of " << opts.max_steps
       << "; use a coarser grid";
    throw std::invalid_argument(os.str());
  }

  std::vector<Eigen::Matrix2cd> m(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) m[static_cast<std::size_t>(k)] = memory(k * dt);

  TimeSeries ts;
  ts.t = t_grid;
  ts.c_a.resize(n);
  ts.c_b.resize(n);
  std::vector<Eigen::Vector2cd> c(static_cast<std::size_t>(n));
  c[0] = Eigen::Vector2cd(1.0, 0.0);
  ts.c_a[0] = 1.0;
  ts.c_b[0] = 0.0;

  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd lhs = id - 0.5 * dt * coherent - 0.25 * dt * dt * m[0];
  const Eigen::PartialPivLU<Eigen::Matrix2cd> lu(lhs);

  // Trapezoidal memory sums J_k = dt * sum'' m(t_k - t_j) c_j.
  auto memory_sum = [&](Eigen::Index k) {
    Eigen::Vector2cd acc = 0.5 * (m[static_cast<std::size_t>(k)] * c[0]);
    for (Eigen::Index j = 1; j < k; ++j)
      acc += m[static_cast<std::size_t>(k - j)] * c[static_cast<std::size_t>(j)];
    acc += 0.5 * (m[0] * c[static_cast<std::size_t>(k)]);
    return Eigen::Vector2cd(dt * acc);
  };

  Eigen::Vector2cd j_prev = Eigen::Vector2cd::Zero();  // J_0 = 0
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    // Known part of J_{k+1} (everything except the 1/2 m(0) c_{k+1} term).
    Eigen::Vector2cd j_next_known =
        0.5 * (m[static_cast<std::size_t>(k + 1)] * c[0]);
    for (Eigen::Index j = 1; j <= k; ++j)
      j_next_known += m[static_cast<std::size_t>(k + 1 - j)] * c[static_cast<std::size_t>(j)];
    j_next_known *= dt;

    const Eigen::Vector2cd rhs =
        c[static_cast<std::size_t>(k)] +
        0.5 * dt * (coherent * c[static_cast<std::size_t>(k)] + j_prev + j_next_known);
    const Eigen::Vector2cd c_next = lu.solve(rhs);
    c[static_cast<std::size_t>(k + 1)] = c_next;
    ts.c_a[k + 1] = c_next[0];
    ts.c_b[k + 1] = c_next[1];
    j_prev = memory_sum(k + 1);
  }
  ts.finalize_populations();
  return ts;
}

TimeSeries volterra_markovian(const CouplingSet& cs, double bandwidth,
                              const Eigen::VectorXd& t_grid) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");
  Eigen::Matrix2cd amp;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) amp(i, j) = cd(-0.5 * cs.gamma(i, j) * bandwidth, 0.0);
  Eigen::Matrix2cd coherent = Eigen::Matrix2cd::Zero();
  coherent(0, 1) = cd(0.0, cs.delta(0, 1));
  coherent(1, 0) = cd(0.0, cs.delta(1, 0));
  return volterra_pair_exponential(amp, cd(bandwidth, 0.0), coherent, t_grid);
}

TimeSeries volterra_lorentzian(double gamma_pm, const ResonanceProfile& profile,
                               double detuning, const Eigen::VectorXd& t_grid) {
  if (!(profile.half_width > 0.0))
    throw std::invalid_argument("resonance profile requires a positive half width");
  const cd amp(-0.5 * gamma_pm * profile.half_width, 0.0);
  const cd rate(profile.half_width, detuning);
  return volterra_single_exponential(amp, rate, t_grid);
}

TimeSeries volterra_tabulated(const AtomConfig& atoms, const GreenSource& source,
                              double delta_ab, const Eigen::VectorXd& t_grid,
                              const VolterraOptions& opts) {
  if (source.kind() != GreenSource::Kind::Tabulated)
    throw std::invalid_argument("volterra_tabulated requires a tabulated source");
  if (atoms.size() != 2) throw std::invalid_argument("two atoms required");
  const auto [w_lo, w_hi] = source.table().range();
  const double w_tilde = 0.5 * (atoms[0].omega_shifted + atoms[1].omega_shifted);
  const double c2 = kSpeedOfLight * kSpeedOfLight;

  auto memory = [&, w_lo = w_lo, w_hi = w_hi](double tau) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        auto f = [&](double w) {
          Eigen::Matrix3cd im_g;
          if (i == j) {
            im_g = source.equal_point_im(atoms[i].position, i, w)
                       .cast<cd>();
          } else {
            im_g = source.query(atoms[i].position, atoms[j].position, i, j, w)
                       .imag()
                       .cast<cd>();
          }
          const double weight =
              (w * w / c2) * atoms[i].dipole.dot(im_g * atoms[j].dipole).real();
          return weight * std::exp(cd(0.0, -(w - w_tilde) * tau));
        };
        m(i, j) = -quad::integrate(f, w_lo, w_hi, opts.quad_rel_tol) / (kPi * kHbar * kEps0);
      }
    }
    return m;
  };

  Eigen::Matrix2cd coherent = Eigen::Matrix2cd::Zero();
  coherent(0, 1) = coherent(1, 0) = cd(0.0, delta_ab);
  return volterra_pair(memory, coherent, t_grid, opts);
}

double strong_ode_residual(const Eigen::VectorXcd& c, const Eigen::VectorXd& t_grid,
                           const StrongOdeParams& p) {
  const double dt = check_uniform(t_grid);
  if (c.size() != t_grid.size())
    throw std::invalid_argument("series and grid lengths differ");
  if (dt * p.omega_rabi > 0.1) {
    std::ostringstream os;
    os << "grid too coarse for 2nd derivatives: dt * Omega = " << dt * p.omega_rabi
       << " > 0.1";
    throw std::invalid_argument(os.str());
  }
  const cd coef(p.half_width, p.omega_m - p.omega_tilde + p.delta_signed);
  const double omega_sq = 0.25 * p.omega_rabi * p.omega_rabi;
  double worst = 0.0;
  for (Eigen::Index k = 1; k + 1 < c.size(); ++k) {
    const cd second = (c[k + 1] - 2.0 * c[k] + c[k - 1]) / (dt * dt);
    const cd first = (c[k + 1] - c[k - 1]) / (2.0 * dt);
    const cd resid = second + coef * first + omega_sq * c[k];
    worst = std::max(worst, std::abs(resid));
  }
  return worst;
}

}  // namespace rdd
