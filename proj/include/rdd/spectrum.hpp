#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rdd/dynamics.hpp"
#include "rdd/green.hpp"

namespace rdd {

/// Emitted-light power spectrum on a strictly increasing frequency grid;
/// values are the literal |amplitude|^2 of the underlying line-shape
/// brackets (arbitrary units).
struct SpectrumSeries {
  Eigen::VectorXd omega_s;  // rad/s
  Eigen::VectorXd s;
  std::string regime;
  std::string branch;
  Eigen::Vector3d observation = Eigen::Vector3d::Zero();
  bool convergence_warning = false;

  void validate() const;
};

struct Peak {
  double position = 0.0;    // rad/s
  double half_width = 0.0;  // rad/s, half width at half maximum
  double weight = 0.0;      // integrated between adjacent minima
};

/// Weak-coupling emission vector at observation point r for one atom:
/// F = (w^2 / pi eps0 c^2) [ pi Im G(r, r_A, w) d
///                           + i PV int dw' Im G(r, r_A, w') d / (w - w') ],
/// the PV part taken over [win_lo, win_hi] which must contain w.
Eigen::Vector3cd emission_vector_weak(const GreenSource& source,
                                      const Eigen::Vector3d& observation,
                                      const AtomConfig& atoms, int atom_index,
                                      double omega_tilde, double win_lo, double win_hi,
                                      double rel_tol = 1e-10);

/// Strong-coupling emission vector at the resonance center:
/// W = (w_m^2 dw_m / (eps0 c^2 Omega)) Im G(r, r_A, w_m) d.
Eigen::Vector3cd emission_vector_strong(const GreenSource& source,
                                        const Eigen::Vector3d& observation,
                                        const AtomConfig& atoms, int atom_index,
                                        double omega_m, double half_width,
                                        double omega_rabi);

/// Weak-coupling doublet:
/// S = 1/4 | (F_A+F_B)/(dw_s + d_ab + i G_plus/2)
///         + (F_A-F_B)/(dw_s - d_ab + i G_minus/2) |^2,  dw_s = w_s - w_a.
SpectrumSeries weak_spectrum(const Eigen::Vector3cd& f_a, const Eigen::Vector3cd& f_b,
                             double delta_ab, double gamma_plus, double gamma_minus,
                             double omega_tilde_a, const Eigen::VectorXd& grid);

/// Strong-coupling triplet: Rabi-split pair of the strongly coupled
/// superposition plus the weak-branch line.
SpectrumSeries strong_spectrum(const Eigen::Vector3cd& w_a, const Eigen::Vector3cd& w_b,
                               const Eigen::Vector3cd& f_a, const Eigen::Vector3cd& f_b,
                               double delta_ab, double omega_rabi, double half_width,
                               double gamma_weak, Branch strong_branch,
                               double omega_tilde_a, const Eigen::VectorXd& grid);

/// Finite-observation-time spectrum from sampled amplitudes:
/// S(w_s, T) = | sum_A F_A int_0^T dt e^{i(w_s - w_A)t} C_A(t) |^2
/// (the emission-memory integral reduced by the long-time zeta split).
SpectrumSeries finite_T_spectrum_numeric(const TimeSeries& series,
                                         const Eigen::Vector3cd& f_a,
                                         const Eigen::Vector3cd& f_b, double omega_tilde_a,
                                         double omega_tilde_b, const Eigen::VectorXd& grid,
                                         double min_decay_rate = 0.0);

/// Finite-observation-time spectrum with an explicit emission memory kernel
/// per atom: the inner t' integral is carried out by direct quadrature,
/// S = | sum_A int_0^T dt1 e^{i(w_s - w_A)t1} int_0^{t1} dt' C_A(t') k_A(t1-t') |^2.
SpectrumSeries finite_T_spectrum_kernel(
    const TimeSeries& series, const std::function<Eigen::Vector3cd(double)>& kernel_a,
    const std::function<Eigen::Vector3cd(double)>& kernel_b, double omega_tilde_a,
    double omega_tilde_b, const Eigen::VectorXd& grid, double min_decay_rate = 0.0);

/// Local maxima with interpolated half widths and integrated weights.
std::vector<Peak> peak_analysis(const SpectrumSeries& series);

/// Default spectral grid: n points spanning omega_a +- span.
Eigen::VectorXd spectrum_grid(double omega_tilde_a, double span, Eigen::Index n = 2001);

}  // namespace rdd
