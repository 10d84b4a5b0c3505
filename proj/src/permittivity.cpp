#include "rdd/permittivity.hpp"

#include <cmath>
#include <stdexcept>

namespace rdd {

PermittivityModel PermittivityModel::vacuum() {
  return PermittivityModel(Kind::Vacuum);
}

PermittivityModel PermittivityModel::constant(std::complex<double> eps) {
  if (eps.imag() < 0.0)
    throw std::invalid_argument("constant permittivity must be passive (eps_I >= 0)");
  PermittivityModel m(Kind::ConstantComplex);
  m.eps_const_ = eps;
  return m;
}

PermittivityModel PermittivityModel::drude_lorentz(std::vector<LorentzOscillator> oscillators) {
  for (const auto& o : oscillators) {
    if (o.omega_p < 0.0 || o.omega_t < 0.0 || o.gamma <= 0.0)
      throw std::invalid_argument("Drude-Lorentz oscillator requires omega_p, omega_t >= 0 and gamma > 0");
  }
  PermittivityModel m(Kind::DrudeLorentz);
  m.oscillators_ = std::move(oscillators);
  return m;
}

std::complex<double> PermittivityModel::evaluate(double omega) const {
  if (omega < 0.0) throw std::domain_error("permittivity frequency must be nonnegative");
  switch (kind_) {
    case Kind::Vacuum:
      return {1.0, 0.0};
    case Kind::ConstantComplex:
      return eps_const_;
    case Kind::DrudeLorentz: {
      std::complex<double> eps(1.0, 0.0);
      for (const auto& o : oscillators_) {
        const std::complex<double> denom(o.omega_t * o.omega_t - omega * omega,
                                         -o.gamma * omega);
        eps += o.omega_p * o.omega_p / denom;
      }
      return eps;
    }
  }
  return {1.0, 0.0};
}

std::complex<double> PermittivityModel::refractive_index(double omega) const {
  const std::complex<double> eps = evaluate(omega);
  if (eps.imag() == 0.0 && eps.real() > 0.0)
    return {std::sqrt(eps.real()), 0.0};
  std::complex<double> n = std::sqrt(eps);
  if (n.imag() < 0.0) n = -n;
  return n;
}

bool PermittivityModel::lossless_at(double omega) const {
  return evaluate(omega).imag() == 0.0;
}

}  // namespace rdd
