#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace rdd {

/// One two-level atom: position, complex transition dipole, bare transition
/// frequency and the (possibly environment-shifted) frequency actually used
/// by the coupling formulas.
struct Atom {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // m
  Eigen::Vector3cd dipole = Eigen::Vector3cd::Zero();  // C m
  double omega = 0.0;                                  // rad/s, bare
  double omega_shifted = 0.0;                          // rad/s

  void validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("atom requires omega > 0");
    if (!(omega_shifted > 0.0))
      throw std::invalid_argument("atom requires omega_shifted > 0");
    if (dipole.norm() == 0.0) throw std::invalid_argument("atom requires a non-zero dipole");
  }
};

using AtomConfig = std::vector<Atom>;

}  // namespace rdd
