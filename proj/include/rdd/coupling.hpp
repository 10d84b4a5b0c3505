#pragma once

#include <Eigen/Dense>
#include <complex>

#include "rdd/atom.hpp"
#include "rdd/green.hpp"

namespace rdd {

/// Symmetric/antisymmetric collective decay rates and vacuum Rabi
/// frequencies for a narrow field resonance of half width dw_m.
struct CollectiveParams {
  double gamma_plus = 0.0;   // 1/s
  double gamma_minus = 0.0;  // 1/s
  double omega_plus = 0.0;   // rad/s
  double omega_minus = 0.0;  // rad/s
};

/// All pairwise coupling coefficients of the two-atom system.
/// gamma holds Gamma_{i*j}; delta holds the dipole-dipole shifts
/// (off-diagonal) and single-atom reflection shifts (diagonal); kappa holds
/// the complex coupling -Gamma/2 + i delta (off-diagonal).
struct CouplingSet {
  Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();    // 1/s
  Eigen::Matrix2d delta = Eigen::Matrix2d::Zero();    // rad/s
  Eigen::Matrix2cd kappa = Eigen::Matrix2cd::Zero();  // 1/s
};

/// Frequency at which pair coefficients involving atom j are evaluated;
/// replaced by the two-atom mid-frequency when the shifted frequencies
/// differ by less than 1e-3 of the smaller one.
double pair_frequency(const AtomConfig& atoms, int j);

/// Decay matrix Gamma_{i*j} = (2 w_j^2 / hbar eps0 c^2) d_i* . Im G . d_j,
/// diagonal from the source's equal-point imaginary part.
Eigen::Matrix2d decay_matrix(const AtomConfig& atoms, const GreenSource& source);

/// Off-diagonal dipole-dipole shift
/// delta_{i*j} = (w_j^2 / hbar eps0 c^2) d_i* . Re G(r_i, r_j, w_j) . d_j.
double dd_shift(const AtomConfig& atoms, const GreenSource& source, int i, int j);

struct PvComponents {
  double minus = 0.0;  // rad/s, pole term 1/(w - w_pole)
  double plus = 0.0;   // rad/s, smooth term 1/(w + w_pole)
};

/// Principal-value frequency integrals
///   delta^-/+ = (1/(pi hbar eps0)) P int dw (w^2/c^2) d_i* . Im G . d_j / (w -/+ w_pole)
/// over [w_lo, w_hi].  A symmetric window of half width omega_split around
/// the pole is handled by the PV machinery; the remainder by plain adaptive
/// quadrature.  omega_split <= 0 selects the full window.
PvComponents pv_components(const AtomConfig& atoms, const GreenSource& source, int i, int j,
                           double omega_pole, double w_lo, double w_hi,
                           double omega_split = 0.0, double rel_tol = 1e-10);

/// Bounds default to the tabulated frequency coverage (tabulated sources only).
PvComponents pv_components(const AtomConfig& atoms, const GreenSource& source, int i, int j,
                           double omega_pole, double omega_split = 0.0,
                           double rel_tol = 1e-10);

struct LambShift {
  double value = 0.0;  // rad/s
  bool vacuum_only = false;
};

/// Single-atom shift from the reflection part of the Green tensor:
/// (w^2 / hbar eps0 c^2) d* . Re G^R(r, r, w) . d, minus 2 delta^+ when the
/// small off-resonant correction is requested.  Pure vacuum sources return 0
/// with the vacuum_only flag set.
LambShift lamb_shift(const AtomConfig& atoms, const GreenSource& source, int i,
                     bool off_resonant_correction = false);

/// Writes omega_shifted = omega - lamb_shift for both atoms.
void apply_lamb_shifts(AtomConfig& atoms, const GreenSource& source);

/// Complex couplings kappa_{i*j} = i (w_j^2 / hbar eps0 c^2) d_i* . G . d_j
/// (off-diagonal).  Asserts the decomposition kappa = -Gamma/2 + i delta
/// against decay_matrix and dd_shift to 1e-10 relative.
Eigen::Matrix2cd kappa_matrix(const AtomConfig& atoms, const GreenSource& source);

/// Gamma_pm = gamma_aa +- gamma_ab, Omega_pm = sqrt(2 Gamma_pm dw_m).
CollectiveParams collective_params(double gamma_aa, double gamma_ab, double half_width);

/// Builds the full coupling set from geometry and a Green source.
CouplingSet build_coupling_set(const AtomConfig& atoms, const GreenSource& source);

/// Builds a coupling set directly from prescribed rates (same units for all
/// four numbers), bypassing any Green-tensor evaluation.
CouplingSet coupling_from_rates(double gamma_aa, double gamma_bb, double gamma_ab,
                                double delta_ab);

}  // namespace rdd
