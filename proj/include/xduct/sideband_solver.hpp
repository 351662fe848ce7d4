#pragma once

#include <map>
#include <string>
#include <vector>

#include "xduct/block_diag.hpp"
#include "xduct/matrix_builder.hpp"

namespace xduct {

/// Sideband index of a transfer matrix: the input frequency is
/// omega + sign * 2 k omega_m.
struct SidebandKey {
  int sign = 1;  // +1 or -1
  int k = 1;
  auto operator<=>(const SidebandKey&) const = default;
};

/// Eliminated sideband chain at one probe frequency. Entries are indexed k = 1..N.
struct RecursionChain {
  std::map<int, BlockDiag> x_plus;
  std::map<int, BlockDiag> x_minus;
  std::map<int, BlockDiag> xi_plus;
  std::map<int, BlockDiag> xi_minus;
  double probe_omega = 0.0;
  int n_sidebands = 0;
  double min_rcond = 1.0;  // smallest reciprocal condition number met in the chain
};

struct TransferSolution {
  Eigen::MatrixXcd t_central;
  std::map<SidebandKey, Eigen::MatrixXcd> t_sideband;
  Mat6 x_central;
  PortLayout port_map;
  double probe_omega = 0.0;
  double omega_m = 0.0;
  DriveMode mode = DriveMode::Constant;
  int n_sidebands = 0;  // 0 for the constant protocol
  double condition_estimate = 1.0;  // 1-norm condition number of the worst inversion
  std::vector<std::string> warnings;

  /// Central element T_{out,in}, e.g. element("o.ex", Annihilation, "e.ex", Creation).
  cplx element(const std::string& out, Quadrature qo, const std::string& in, Quadrature qi) const;
};

inline constexpr double kConditionWarning = 1e12;

/// T = B^T (-i omega I - A)^{-1} B - I with partial-pivot LU.
TransferSolution solve_constant(const Mat6& a, const PortLayout& layout, double omega,
                                double omega_m);

/// Eliminates sidebands N..1 using the 2x2 block structure. Requires kappa_m > 0.
/// A singular block throws SingularMatrixError naming (sign, k, block).
RecursionChain build_recursion(const SidebandMatrixSet& mats, double omega, int n);

/// Central and k <= min(N, 2) sideband transfer matrices from the recursion.
TransferSolution solve_parametric(const SidebandMatrixSet& mats, const PortLayout& layout,
                                  double omega, int n);

/// One dense LU solve of the (2N+1)*6 extended system. Returns every sideband k <= N.
TransferSolution dense_oracle(const SidebandMatrixSet& mats, const PortLayout& layout,
                              double omega, int n);

/// Eigenvalue check of the extended generator. Advisory only.
struct StabilityReport {
  bool stable = true;
  double max_real_part = 0.0;  // rad/s
};

StabilityReport assess_stability(const Mat6& a_constant);
StabilityReport assess_stability(const SidebandMatrixSet& mats, int n);

}  // namespace xduct
