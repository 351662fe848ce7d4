#pragma once

#include <map>
#include <string>
#include <vector>

#include "xduct/config.hpp"
#include "xduct/sideband_solver.hpp"

namespace xduct {

/// The sideband recursion with full 6x6 inversions, ignoring the block structure.
struct DenseChain {
  std::map<int, Mat6> x_plus;
  std::map<int, Mat6> x_minus;
  std::map<int, Mat6> xi_plus;
  std::map<int, Mat6> xi_minus;
};

DenseChain build_recursion_dense(const SidebandMatrixSet& mats, double omega, int n);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  bool advisory = false;  // reported, never fails the suite
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Invariant and structure checks at the configured point, both protocols,
/// N = 1..n_max for the parametric drive.
VerifyReport run_verification(const RunConfig& config, int n_max = 5);

}  // namespace xduct
