#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rdd/atom.hpp"
#include "rdd/permittivity.hpp"

namespace rdd {

/// 3x3 complex dyadic, units 1/m.  The normalization is fixed such that
/// Gamma_{AA'} = (2 w^2 / hbar eps0 c^2) d_A . Im G . d_A' comes out in 1/s
/// with SI inputs; the free-space rate check in the test suite pins it.
using GreenTensor = Eigen::Matrix3cd;

/// Site index used for the spectrum observation point in tabulated data.
inline constexpr int kObservationSite = 2;

/// Homogeneous-medium dyadic between two distinct points,
/// k = n(omega) omega / c:
///   G = e^{ikR}/(4 pi R) [ (1 + (ikR-1)/(kR)^2) I
///                          + (3(1-ikR)/(kR)^2 - 1) Rhat Rhat ].
GreenTensor bulk_green(const PermittivityModel& medium, const Eigen::Vector3d& r_a,
                       const Eigen::Vector3d& r_b, double omega);

/// Equal-point imaginary part in free space, (omega / 6 pi c) * I.
Eigen::Matrix3d equal_point_im_vacuum(double omega);

/// Short-distance limit of the dipole-dipole shift in a bulk medium (rad/s):
/// [1/(4 pi hbar eps0 R^3)] Re[1/eps] (3 (d_a*.Rhat)(d_b.Rhat) - d_a*.d_b).
double asymptotic_delta_short(const Atom& a, const Atom& b,
                              const PermittivityModel& medium, double omega);

/// Long-distance limit (rad/s): transverse projection, cos(n_R w R/c)
/// modulation and exp(-n_I w R/c) damping, amplitude c^2/(4 pi hbar eps0 R w^2).
double asymptotic_delta_long(const Atom& a, const Atom& b,
                             const PermittivityModel& medium, double omega);

/// Frequency-tabulated Green tensors, keyed by site pair (i, j) with
/// 0/1 = atoms and kObservationSite = spectrum observation point.
///
/// Convention for stored data: distinct-site entries hold the full tensor
/// (vacuum + scattering parts); equal-site entries hold the scattering
/// (reflection) part only, since the equal-point vacuum real part diverges
/// and is folded into the bare transition frequency.
class TabulatedGreen {
 public:
  void add_pair(int i, int j, Eigen::VectorXd omega_grid, std::vector<GreenTensor> tensors);
  void set_interp_order(int order);  // 1 (linear) or 3 (piecewise cubic)
  int interp_order() const { return order_; }

  bool has(int i, int j) const;
  GreenTensor eval(int i, int j, double omega) const;

  /// Common frequency coverage across all stored pairs.
  std::pair<double, double> range() const;

  /// Cross-checks transposed pairs (i,j)/(j,i) for reciprocity, 1e-6 relative.
  void check_reciprocity() const;

 private:
  struct Table {
    Eigen::VectorXd w;
    std::vector<GreenTensor> g;
  };
  std::map<std::pair<int, int>, Table> tables_;
  int order_ = 3;
};

/// Loads one pair's table from columnar text:
///   # omega Re(Gxx) Im(Gxx) ... Re(Gzz) Im(Gzz)
/// one frequency per row, entries row-major (xx, xy, xz, yx, ..., zz), SI units.
void load_green_table_file(TabulatedGreen& dst, const std::string& path, int i, int j);

/// Provider of G(r_i, r_j, omega): analytic free space, analytic absorbing
/// bulk, or tabulated-over-frequency environments.
class GreenSource {
 public:
  enum class Kind { AnalyticVacuum, AnalyticBulk, Tabulated };

  static GreenSource analytic_vacuum();
  static GreenSource analytic_bulk(PermittivityModel medium);
  static GreenSource tabulated(TabulatedGreen table);

  Kind kind() const { return kind_; }
  const PermittivityModel& medium() const { return medium_; }
  const TabulatedGreen& table() const;

  /// Green tensor between stored sites i and j at positions r_i, r_j.
  GreenTensor query(const Eigen::Vector3d& r_i, const Eigen::Vector3d& r_j, int i, int j,
                    double omega) const;

  /// Equal-point imaginary part at atom site i: free-space value plus the
  /// tabulated reflection contribution when present.  For lossless analytic
  /// bulk this is the R -> 0 limit Re(n) omega/(6 pi c) I.
  Eigen::Matrix3d equal_point_im(const Eigen::Vector3d& r_i, int i, double omega) const;

 private:
  explicit GreenSource(Kind k) : kind_(k), medium_(PermittivityModel::vacuum()) {}

  Kind kind_;
  PermittivityModel medium_;
  TabulatedGreen table_;
};

}  // namespace rdd
