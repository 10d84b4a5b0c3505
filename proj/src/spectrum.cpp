#include "rdd/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "rdd/constants.hpp"
#include "rdd/quadrature.hpp"

namespace rdd {

namespace {

using cd = std::complex<double>;

Eigen::Vector3cd im_g_dot_d(const GreenSource& source, const Eigen::Vector3d& observation,
                            const AtomConfig& atoms, int atom_index, double omega) {
  const Atom& atom = atoms[static_cast<std::size_t>(atom_index)];
  const GreenTensor g =
      source.query(observation, atom.position, kObservationSite, atom_index, omega);
  return g.imag().cast<cd>() * atom.dipole;
}

void check_grid(const Eigen::VectorXd& grid) {
  if (grid.size() < 2) throw std::invalid_argument("spectral grid needs >= 2 points");
  for (Eigen::Index k = 0; k + 1 < grid.size(); ++k)
    if (!(grid[k] < grid[k + 1]))
      throw std::invalid_argument("spectral grid must be strictly increasing");
}

/// Trapezoid of exp(i phase t) * c(t) over the series grid.
cd phased_trapezoid(const Eigen::VectorXd& t, const Eigen::VectorXcd& c, double phase) {
  const double dt = t[1] - t[0];
  cd acc = 0.0;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const double w = (k == 0 || k + 1 == t.size()) ? 0.5 : 1.0;
    acc += w * std::exp(cd(0.0, phase * t[k])) * c[k];
  }
  return acc * dt;
}

}  // namespace

void SpectrumSeries::validate() const {
  check_grid(omega_s);
  if (omega_s.size() != s.size())
    throw std::invalid_argument("spectrum grid/value length mismatch");
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!(s[k] >= 0.0)) throw std::logic_error("spectral density must be nonnegative");
}

Eigen::Vector3cd emission_vector_weak(const GreenSource& source,
                                      const Eigen::Vector3d& observation,
                                      const AtomConfig& atoms, int atom_index,
                                      double omega_tilde, double win_lo, double win_hi,
                                      double rel_tol) {
  if (!(win_lo < omega_tilde && omega_tilde < win_hi))
    throw std::domain_error("resonant window must contain the transition frequency");
  auto f = [&](double w) {
    return im_g_dot_d(source, observation, atoms, atom_index, w);
  };
  const Eigen::Vector3cd delta_part = kPi * f(omega_tilde);
  // PV int dw f(w)/(omega_tilde - w) = -PV int dw f(w)/(w - omega_tilde).
  const Eigen::Vector3cd pv_part =
      -quad::pv_integral(f, win_lo, win_hi, omega_tilde, rel_tol);
  const double pre = omega_tilde * omega_tilde /
                     (kPi * kEps0 * kSpeedOfLight * kSpeedOfLight);
  return pre * (delta_part + cd(0.0, 1.0) * pv_part);
}

Eigen::Vector3cd emission_vector_strong(const GreenSource& source,
                                        const Eigen::Vector3d& observation,
                                        const AtomConfig& atoms, int atom_index,
                                        double omega_m, double half_width,
                                        double omega_rabi) {
  if (!(omega_rabi > 0.0))
    throw std::invalid_argument("strong emission vector needs a positive Rabi frequency");
  const double pre = omega_m * omega_m * half_width /
                     (kEps0 * kSpeedOfLight * kSpeedOfLight * omega_rabi);
  return pre * im_g_dot_d(source, observation, atoms, atom_index, omega_m);
}

SpectrumSeries weak_spectrum(const Eigen::Vector3cd& f_a, const Eigen::Vector3cd& f_b,
                             double delta_ab, double gamma_plus, double gamma_minus,
                             double omega_tilde_a, const Eigen::VectorXd& grid) {
  check_grid(grid);
  SpectrumSeries out;
  out.omega_s = grid;
  out.s.resize(grid.size());
  out.regime = "weak";
  const Eigen::Vector3cd sum = f_a + f_b;
  const Eigen::Vector3cd diff = f_a - f_b;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double dws = grid[k] - omega_tilde_a;
    const Eigen::Vector3cd amp = sum / cd(dws + delta_ab, 0.5 * gamma_plus) +
                                 diff / cd(dws - delta_ab, 0.5 * gamma_minus);
    out.s[k] = 0.25 * amp.squaredNorm();
  }
  return out;
}

SpectrumSeries strong_spectrum(const Eigen::Vector3cd& w_a, const Eigen::Vector3cd& w_b,
                               const Eigen::Vector3cd& f_a, const Eigen::Vector3cd& f_b,
                               double delta_ab, double omega_rabi, double half_width,
                               double gamma_weak, Branch strong_branch,
                               double omega_tilde_a, const Eigen::VectorXd& grid) {
  check_grid(grid);
  const double sign = strong_branch == Branch::Plus ? 1.0 : -1.0;
  const Eigen::Vector3cd w_sum = w_a + sign * w_b;
  const Eigen::Vector3cd f_diff = f_a - sign * f_b;

  SpectrumSeries out;
  out.omega_s = grid;
  out.s.resize(grid.size());
  out.regime = "strong";
  out.branch = strong_branch == Branch::Plus ? "+" : "-";
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double dws = grid[k] - omega_tilde_a;
    const cd den_hi(dws + sign * delta_ab + 0.5 * omega_rabi, 0.5 * half_width);
    const cd den_lo(dws + sign * delta_ab - 0.5 * omega_rabi, 0.5 * half_width);
    const cd den_weak(dws - sign * delta_ab, 0.5 * gamma_weak);
    const Eigen::Vector3cd amp =
        w_sum * (1.0 / den_hi - 1.0 / den_lo) + cd(0.0, 1.0) * f_diff / den_weak;
    out.s[k] = 0.25 * amp.squaredNorm();
  }
  return out;
}

SpectrumSeries finite_T_spectrum_numeric(const TimeSeries& series,
                                         const Eigen::Vector3cd& f_a,
                                         const Eigen::Vector3cd& f_b, double omega_tilde_a,
                                         double omega_tilde_b, const Eigen::VectorXd& grid,
                                         double min_decay_rate) {
  check_grid(grid);
  if (series.t.size() < 2) throw std::invalid_argument("amplitude series too short");
  SpectrumSeries out;
  out.omega_s = grid;
  out.s.resize(grid.size());
  out.regime = "finite-T";
  const double t_final = series.t[series.t.size() - 1];
  if (min_decay_rate > 0.0 && t_final < 3.0 / min_decay_rate) out.convergence_warning = true;

  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const cd ia = phased_trapezoid(series.t, series.c_a, grid[k] - omega_tilde_a);
    const cd ib = phased_trapezoid(series.t, series.c_b, grid[k] - omega_tilde_b);
    out.s[k] = (f_a * ia + f_b * ib).squaredNorm();
  }
  return out;
}

SpectrumSeries finite_T_spectrum_kernel(
    const TimeSeries& series, const std::function<Eigen::Vector3cd(double)>& kernel_a,
    const std::function<Eigen::Vector3cd(double)>& kernel_b, double omega_tilde_a,
    double omega_tilde_b, const Eigen::VectorXd& grid, double min_decay_rate) {
  check_grid(grid);
  const Eigen::Index n = series.t.size();
  if (n < 2) throw std::invalid_argument("amplitude series too short");
  const double dt = series.t[1] - series.t[0];

  // Inner convolutions h_A(t1) = int_0^{t1} C_A(t') k_A(t1 - t') dt' are
  // independent of omega_s; precompute them once.
  std::vector<Eigen::Vector3cd> ka(static_cast<std::size_t>(n)),
      kb(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    ka[static_cast<std::size_t>(k)] = kernel_a(k * dt);
    kb[static_cast<std::size_t>(k)] = kernel_b(k * dt);
  }
  std::vector<Eigen::Vector3cd> ha(static_cast<std::size_t>(n)),
      hb(static_cast<std::size_t>(n));
  for (Eigen::Index m = 0; m < n; ++m) {
    Eigen::Vector3cd acc_a = Eigen::Vector3cd::Zero(), acc_b = Eigen::Vector3cd::Zero();
    for (Eigen::Index j = 0; j <= m; ++j) {
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      acc_a += w * series.c_a[j] * ka[static_cast<std::size_t>(m - j)];
      acc_b += w * series.c_b[j] * kb[static_cast<std::size_t>(m - j)];
    }
    ha[static_cast<std::size_t>(m)] = (m == 0) ? Eigen::Vector3cd::Zero().eval()
                                               : (dt * acc_a).eval();
    hb[static_cast<std::size_t>(m)] = (m == 0) ? Eigen::Vector3cd::Zero().eval()
                                               : (dt * acc_b).eval();
  }

  SpectrumSeries out;
  out.omega_s = grid;
  out.s.resize(grid.size());
  out.regime = "finite-T-kernel";
  const double t_final = series.t[n - 1];
  if (min_decay_rate > 0.0 && t_final < 3.0 / min_decay_rate) out.convergence_warning = true;

  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
    for (Eigen::Index m = 0; m < n; ++m) {
      const double w = (m == 0 || m + 1 == n) ? 0.5 : 1.0;
      const cd pa = std::exp(cd(0.0, (grid[k] - omega_tilde_a) * series.t[m]));
      const cd pb = std::exp(cd(0.0, (grid[k] - omega_tilde_b) * series.t[m]));
      acc += w * (pa * ha[static_cast<std::size_t>(m)] + pb * hb[static_cast<std::size_t>(m)]);
    }
    out.s[k] = (dt * acc).squaredNorm();
  }
  return out;
}

std::vector<Peak> peak_analysis(const SpectrumSeries& series) {
  const Eigen::VectorXd& x = series.omega_s;
  const Eigen::VectorXd& y = series.s;
  const Eigen::Index n = x.size();
  std::vector<Peak> peaks;

  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    if (!(y[k] > y[k - 1] && y[k] > y[k + 1])) continue;
    Peak p;
    // Parabolic refinement of the maximum position.
    const double denom = y[k - 1] - 2.0 * y[k] + y[k + 1];
    const double dx = x[1] - x[0];
    p.position = x[k];
    if (denom < 0.0) p.position += 0.5 * dx * (y[k - 1] - y[k + 1]) / denom;

    const double half = 0.5 * y[k];
    double left = x[0], right = x[n - 1];
    for (Eigen::Index j = k; j > 0; --j) {
      if (y[j - 1] <= half) {
        const double f = (y[j] - half) / (y[j] - y[j - 1]);
        left = x[j] - f * dx;
        break;
      }
      if (y[j - 1] > y[j]) {  // ran into a neighboring peak's flank
        left = x[j - 1];
        break;
      }
    }
    for (Eigen::Index j = k; j + 1 < n; ++j) {
      if (y[j + 1] <= half) {
        const double f = (y[j] - half) / (y[j] - y[j + 1]);
        right = x[j] + f * dx;
        break;
      }
      if (y[j + 1] > y[j]) {
        right = x[j + 1];
        break;
      }
    }
    p.half_width = 0.5 * (right - left);

    // Weight: trapezoid between the adjacent local minima (or boundaries).
    Eigen::Index lo = k, hi = k;
    while (lo > 0 && y[lo - 1] <= y[lo]) --lo;
    while (hi + 1 < n && y[hi + 1] <= y[hi]) ++hi;
    double w = 0.0;
    for (Eigen::Index j = lo; j < hi; ++j)
      w += 0.5 * (y[j] + y[j + 1]) * (x[j + 1] - x[j]);
    p.weight = w;
    peaks.push_back(p);
  }
  return peaks;
}

Eigen::VectorXd spectrum_grid(double omega_tilde_a, double span, Eigen::Index n) {
  if (!(span > 0.0) || n < 3) throw std::invalid_argument("bad spectrum grid request");
  return Eigen::VectorXd::LinSpaced(n, omega_tilde_a - span, omega_tilde_a + span);
}

}  // namespace rdd
