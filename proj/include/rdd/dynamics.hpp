#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "rdd/atom.hpp"
#include "rdd/coupling.hpp"
#include "rdd/green.hpp"

namespace rdd {

/// Narrow field resonance: Lorentzian of center omega_m and half width at
/// half maximum half_width.
struct ResonanceProfile {
  double omega_m = 0.0;     // rad/s
  double half_width = 0.0;  // rad/s
};

/// Sampled single-excitation amplitudes in the rotating (tilde) frame.
/// Single-amplitude solvers fill c_a and leave c_b zero; superposition-state
/// results additionally fill c_plus/c_minus.
struct TimeSeries {
  Eigen::VectorXd t;  // s, uniform
  Eigen::VectorXcd c_a, c_b;
  Eigen::VectorXcd c_plus, c_minus;  // empty unless produced
  Eigen::VectorXd p_a, p_b;
  bool branch_warning = false;

  void finalize_populations();  // fills p_a/p_b from amplitudes and checks bounds
};

Eigen::VectorXd uniform_grid(double t_max, Eigen::Index samples);

enum class Branch { Plus, Minus };

enum class ExchangeCase {
  DipoleDominated,  // 4|delta| >> Omega
  Balanced,         // 4|delta| ~ Omega
  FieldDominated,   // 4|delta| << Omega
};

struct TimeAverages {
  double p_a = 0.0, p_b = 0.0, p_l = 0.0;
};

/// Analytic weak-coupling amplitudes from the coupling set
/// (degenerate-frequency frame, C_A(0) = 1).
TimeSeries weak_amplitudes(const CouplingSet& cs, const Eigen::VectorXd& t_grid);

/// Symmetric-atom closed form
/// P_{A(B)} = 1/2 [cosh(G_ab t) +- cos(2 d_ab t)] e^{-G_bb t}.
TimeSeries weak_populations_symmetric(double gamma_bb, double gamma_ab, double delta_ab,
                                      const Eigen::VectorXd& t_grid);

struct DensityTrajectory {
  Eigen::VectorXd t;
  Eigen::VectorXd rho_aa, rho_bb;
  Eigen::VectorXcd rho_ab;
};

/// Fixed-step RK4 propagation of the single-excitation density-matrix
/// elements (degenerate frequencies).
DensityTrajectory density_matrix_weak(const CouplingSet& cs, const Eigen::VectorXd& t_grid,
                                      double rho_aa0, double rho_bb0,
                                      std::complex<double> rho_ab0);

/// Strong-coupling populations at exact resonance omega_m = w_A -+ delta:
/// the strong branch Rabi-oscillates under damping half_width, the weak
/// branch decays with its collective rate.
TimeSeries strong_populations(const CollectiveParams& cp, double half_width, double delta_ab,
                              Branch strong_branch, const Eigen::VectorXd& t_grid);

/// Closed-form cycle averages (P_A, P_B, field) for the three periodic cases.
TimeAverages time_averages(ExchangeCase c);

/// Numerical cycle average of the corresponding undamped closed forms.
TimeAverages time_averages_numeric(ExchangeCase c, double omega_rabi, double delta_ab,
                                   int samples = 40001);

struct VolterraOptions {
  Eigen::Index max_steps = 400000;
  double quad_rel_tol = 1e-9;
};

/// Exponential-memory single-amplitude solver:
///   dC/dt = int_0^t amp e^{-rate (t-t')} C(t') dt',  C(0) = 1.
/// The memory integral is advanced by an exact recursion on linearly
/// interpolated C (product integration), so stiff rates are harmless.
TimeSeries volterra_single_exponential(std::complex<double> amp, std::complex<double> rate,
                                       const Eigen::VectorXd& t_grid);

/// Two-amplitude variant with coherent coupling B (applied as dC/dt += B C)
/// and exponential memory matrix amp e^{-rate tau}.
TimeSeries volterra_pair_exponential(const Eigen::Matrix2cd& amp, std::complex<double> rate,
                                     const Eigen::Matrix2cd& coherent,
                                     const Eigen::VectorXd& t_grid);

/// General two-amplitude solver with a sampled memory matrix M(tau)
/// (trapezoidal memory quadrature, 2nd-order predictor-corrector).
TimeSeries volterra_pair(const std::function<Eigen::Matrix2cd(double)>& memory,
                         const Eigen::Matrix2cd& coherent, const Eigen::VectorXd& t_grid,
                         const VolterraOptions& opts = {});

/// Markov-regime kernel derived from a coupling set: coherent i delta
/// exchange plus exponential memories -(Gamma_{i*j}/2) bw e^{-bw tau}.
TimeSeries volterra_markovian(const CouplingSet& cs, double bandwidth,
                              const Eigen::VectorXd& t_grid);

/// Lorentzian-resonance kernel for one superposition amplitude:
/// memory -(gamma_pm/2) dw_m e^{-i(omega_m - omega_tilde -+ ...) tau} e^{-dw_m tau}
/// with the net detuning supplied by the caller (0 at exact resonance).
TimeSeries volterra_lorentzian(double gamma_pm, const ResonanceProfile& profile,
                               double detuning, const Eigen::VectorXd& t_grid);

/// Kernel from a tabulated Im G environment: the memory function is the
/// frequency integral of (w^2/c^2) d Im G d weighted by the rotating-frame
/// phase, evaluated once per time lag and cached.
TimeSeries volterra_tabulated(const AtomConfig& atoms, const GreenSource& source,
                              double delta_ab, const Eigen::VectorXd& t_grid,
                              const VolterraOptions& opts = {});

struct StrongOdeParams {
  double omega_m = 0.0;
  double omega_tilde = 0.0;
  double delta_signed = 0.0;  // +-delta_ab per branch
  double half_width = 0.0;
  double omega_rabi = 0.0;
};

/// Max finite-difference residual of
/// C'' + [i(omega_m - omega_tilde + delta_signed) + half_width] C' + (Omega/2)^2 C.
double strong_ode_residual(const Eigen::VectorXcd& c, const Eigen::VectorXd& t_grid,
                           const StrongOdeParams& p);

}  // namespace rdd
