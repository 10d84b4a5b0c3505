#pragma once

#include <complex>
#include <vector>

namespace rdd {

/// One Drude-Lorentz oscillator; all frequencies in rad/s.
struct LorentzOscillator {
  double omega_p;  // plasma frequency
  double omega_t;  // transverse resonance frequency
  double gamma;    // damping rate
};

/// Complex permittivity of a spatially homogeneous surrounding medium.
///
/// The Drude-Lorentz kind is Kramers-Kronig consistent and passive by
/// construction; a constant complex value must be passive (eps_I >= 0)
/// at construction time.
class PermittivityModel {
 public:
  enum class Kind { Vacuum, ConstantComplex, DrudeLorentz };

  static PermittivityModel vacuum();
  static PermittivityModel constant(std::complex<double> eps);
  static PermittivityModel drude_lorentz(std::vector<LorentzOscillator> oscillators);

  Kind kind() const { return kind_; }
  const std::vector<LorentzOscillator>& oscillators() const { return oscillators_; }

  /// eps(omega) = eps_R + i eps_I.  omega >= 0 (the static limit is allowed
  /// for the analytic kinds); negative omega is a domain error.
  std::complex<double> evaluate(double omega) const;

  /// n(omega) = sqrt(eps) on the branch with n_I >= 0, so that absorption
  /// always damps propagation.
  std::complex<double> refractive_index(double omega) const;

  bool lossless_at(double omega) const;

 private:
  explicit PermittivityModel(Kind k) : kind_(k) {}

  Kind kind_;
  std::complex<double> eps_const_{1.0, 0.0};
  std::vector<LorentzOscillator> oscillators_;
};

}  // namespace rdd
