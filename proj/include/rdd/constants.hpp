#pragma once

namespace rdd {

// CODATA 2018 SI values.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kEps0 = 8.8541878128e-12;     // F/m
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Free-space spontaneous decay rate of a dipole |d| at frequency omega.
inline double free_space_decay_rate(double omega, double dipole_norm) {
  const double w3 = omega * omega * omega;
  return w3 * dipole_norm * dipole_norm /
         (3.0 * kPi * kHbar * kEps0 * kSpeedOfLight * kSpeedOfLight * kSpeedOfLight);
}

}  // namespace rdd
