#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rdd {

struct SelfTestResult {
  std::string name;
  int checks = 0;
  int failures = 0;
};

/// Invariant suite over randomized two-atom geometries (fixed seed):
/// Green reciprocity, Cauchy-Schwarz bound on the cross decay rate, the
/// kappa decomposition identity, population bounds, and spectrum
/// nonnegativity.  Returns per-invariant tallies.
std::vector<SelfTestResult> run_selftest(int geometries = 100);

/// Prints one line per invariant; returns the total failure count.
int report_selftest(std::ostream& os, int geometries = 100);

}  // namespace rdd
