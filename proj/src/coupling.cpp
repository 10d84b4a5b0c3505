#include "rdd/coupling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rdd/constants.hpp"
#include "rdd/quadrature.hpp"

namespace rdd {

namespace {

using cd = std::complex<double>;

void require_two_atoms(const AtomConfig& atoms) {
  if (atoms.size() != 2)
    throw std::invalid_argument("coupling operations require exactly two atoms");
  for (const auto& a : atoms) a.validate();
}

/// d_i* . M . d_j
cd bilinear(const Atom& ai, const Eigen::Matrix3cd& m, const Atom& aj) {
  return ai.dipole.dot(m * aj.dipole);
}

// 2 w^2 / (hbar eps0 c^2); half of it gives the shift prefactor.
double rate_prefactor(double omega) {
  return 2.0 * omega * omega / (kHbar * kEps0 * kSpeedOfLight * kSpeedOfLight);
}

}  // namespace

double pair_frequency(const AtomConfig& atoms, int j) {
  const double wa = atoms[0].omega_shifted;
  const double wb = atoms[1].omega_shifted;
  if (std::abs(wa - wb) < 1e-3 * std::min(wa, wb)) return 0.5 * (wa + wb);
  return atoms[static_cast<std::size_t>(j)].omega_shifted;
}

Eigen::Matrix2d decay_matrix(const AtomConfig& atoms, const GreenSource& source) {
  require_two_atoms(atoms);
  Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double w = pair_frequency(atoms, j);
      Eigen::Matrix3cd im_g;
      if (i == j) {
        im_g = source.equal_point_im(atoms[i].position, i, w).cast<cd>();
      } else {
        im_g = source.query(atoms[i].position, atoms[j].position, i, j, w).imag().cast<cd>();
      }
      gamma(i, j) = rate_prefactor(w) * bilinear(atoms[i], im_g, atoms[j]).real();
    }
  }
  return gamma;
}

double dd_shift(const AtomConfig& atoms, const GreenSource& source, int i, int j) {
  require_two_atoms(atoms);
  if (i == j) throw std::invalid_argument("dd_shift is defined for distinct atoms");
  const double w = pair_frequency(atoms, j);
  const Eigen::Matrix3cd re_g =
      source.query(atoms[i].position, atoms[j].position, i, j, w).real().cast<cd>();
  return 0.5 * rate_prefactor(w) * bilinear(atoms[i], re_g, atoms[j]).real();
}

PvComponents pv_components(const AtomConfig& atoms, const GreenSource& source, int i, int j,
                           double omega_pole, double w_lo, double w_hi, double omega_split,
                           double rel_tol) {
  require_two_atoms(atoms);
  if (!(w_lo > 0.0 && w_hi > w_lo))
    throw std::invalid_argument("pv_components needs 0 < w_lo < w_hi");
  if (!(omega_pole > w_lo && omega_pole < w_hi))
    throw std::domain_error("pv_components: pole lies outside the integration support");

  const double c2 = kSpeedOfLight * kSpeedOfLight;
  auto weighted_im = [&](double w) {
    Eigen::Matrix3cd im_g;
    if (i == j) {
      im_g = source.equal_point_im(atoms[i].position, i, w).cast<cd>();
    } else {
      im_g = source.query(atoms[i].position, atoms[j].position, i, j, w).imag().cast<cd>();
    }
    return (w * w / c2) * bilinear(atoms[i], im_g, atoms[j]).real();
  };
  const double pre = 1.0 / (kPi * kHbar * kEps0);

  double split = (omega_split > 0.0)
                     ? std::min({omega_split, omega_pole - w_lo, w_hi - omega_pole})
                     : std::min(omega_pole - w_lo, w_hi - omega_pole);

  PvComponents out;
  // Resonant window: PV through the pole.
  out.minus = quad::pv_integral(weighted_im, omega_pole - split, omega_pole + split,
                                omega_pole, rel_tol);
  // Off-resonant remainder: plain adaptive quadrature.
  auto minus_tail = [&](double w) { return weighted_im(w) / (w - omega_pole); };
  if (omega_pole - split > w_lo)
    out.minus += quad::integrate(minus_tail, w_lo, omega_pole - split, rel_tol);
  if (omega_pole + split < w_hi)
    out.minus += quad::integrate(minus_tail, omega_pole + split, w_hi, rel_tol);
  out.minus *= pre;

  auto plus_term = [&](double w) { return weighted_im(w) / (w + omega_pole); };
  out.plus = pre * quad::integrate(plus_term, w_lo, w_hi, rel_tol);
  return out;
}

PvComponents pv_components(const AtomConfig& atoms, const GreenSource& source, int i, int j,
                           double omega_pole, double omega_split, double rel_tol) {
  if (source.kind() != GreenSource::Kind::Tabulated)
    throw std::invalid_argument(
        "pv_components without explicit bounds requires a tabulated source "
        "(analytic Im G has unbounded support)");
  const auto [lo, hi] = source.table().range();
  return pv_components(atoms, source, i, j, omega_pole, lo, hi, omega_split, rel_tol);
}

LambShift lamb_shift(const AtomConfig& atoms, const GreenSource& source, int i,
                     bool off_resonant_correction) {
  require_two_atoms(atoms);
  const Atom& atom = atoms[static_cast<std::size_t>(i)];
  const double w = atom.omega;  // bare frequency by definition of the shift

  const bool has_reflection =
      source.kind() == GreenSource::Kind::Tabulated && source.table().has(i, i);
  if (!has_reflection) return LambShift{0.0, true};

  const Eigen::Matrix3cd re_gr = source.table().eval(i, i, w).real().cast<cd>();
  double value = 0.5 * rate_prefactor(w) * bilinear(atom, re_gr, atom).real();
  if (off_resonant_correction) {
    const auto pv = pv_components(atoms, source, i, i, w);
    value -= 2.0 * pv.plus;
  }
  return LambShift{value, false};
}

void apply_lamb_shifts(AtomConfig& atoms, const GreenSource& source) {
  require_two_atoms(atoms);
  for (int i = 0; i < 2; ++i)
    atoms[static_cast<std::size_t>(i)].omega_shifted =
        atoms[static_cast<std::size_t>(i)].omega - lamb_shift(atoms, source, i).value;
}

Eigen::Matrix2cd kappa_matrix(const AtomConfig& atoms, const GreenSource& source) {
  require_two_atoms(atoms);
  const Eigen::Matrix2d gamma = decay_matrix(atoms, source);
  Eigen::Matrix2cd kappa = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double w = pair_frequency(atoms, j);
    const Eigen::Matrix3cd g =
        source.query(atoms[i].position, atoms[j].position, i, j, w);
    kappa(i, j) = cd(0.0, 1.0) * 0.5 * rate_prefactor(w) * bilinear(atoms[i], g, atoms[j]);

    const cd expected(-0.5 * gamma(i, j), dd_shift(atoms, source, i, j));
    const double scale = std::max(std::abs(kappa(i, j)), std::abs(expected));
    if (scale > 0.0 && std::abs(kappa(i, j) - expected) > 1e-10 * scale)
      throw std::runtime_error(
          "kappa decomposition -Gamma/2 + i delta failed its consistency check");
  }
  return kappa;
}

CollectiveParams collective_params(double gamma_aa, double gamma_ab, double half_width) {
  if (!(half_width > 0.0))
    throw std::invalid_argument("collective_params requires a positive resonance half width");
  CollectiveParams p;
  p.gamma_plus = gamma_aa + gamma_ab;
  p.gamma_minus = gamma_aa - gamma_ab;
  if (p.gamma_plus < 0.0 || p.gamma_minus < 0.0) {
    std::ostringstream os;
    os << "non-physical collective rate: gamma_aa = " << gamma_aa
       << ", gamma_ab = " << gamma_ab;
    throw std::runtime_error(os.str());
  }
  p.omega_plus = std::sqrt(2.0 * p.gamma_plus * half_width);
  p.omega_minus = std::sqrt(2.0 * p.gamma_minus * half_width);
  return p;
}

CouplingSet build_coupling_set(const AtomConfig& atoms, const GreenSource& source) {
  require_two_atoms(atoms);
  CouplingSet cs;
  cs.gamma = decay_matrix(atoms, source);
  cs.delta(0, 1) = dd_shift(atoms, source, 0, 1);
  cs.delta(1, 0) = dd_shift(atoms, source, 1, 0);
  cs.delta(0, 0) = lamb_shift(atoms, source, 0).value;
  cs.delta(1, 1) = lamb_shift(atoms, source, 1).value;
  cs.kappa = kappa_matrix(atoms, source);
  return cs;
}

CouplingSet coupling_from_rates(double gamma_aa, double gamma_bb, double gamma_ab,
                                double delta_ab) {
  if (gamma_aa < 0.0 || gamma_bb < 0.0)
    throw std::invalid_argument("diagonal decay rates must be nonnegative");
  CouplingSet cs;
  cs.gamma << gamma_aa, gamma_ab, gamma_ab, gamma_bb;
  cs.delta(0, 1) = cs.delta(1, 0) = delta_ab;
  cs.kappa(0, 1) = cs.kappa(1, 0) = cd(-0.5 * gamma_ab, delta_ab);
  return cs;
}

}  // namespace rdd
