#pragma once

#include <string>
#include <vector>

#include "xduct/sideband_solver.hpp"

namespace xduct {

/// One input column of the signal-output row.
struct NoiseTerm {
  std::string label;    // e.g. "e.ex'", "m@-1", "o.int@+2"
  int sideband = 0;     // signed k; 0 is the central frequency
  double weight = 0.5;  // vacuum weight; 3/2 for the conjugate signal input
  double magnitude_sq = 0.0;
  double contribution = 0.0;  // weight * magnitude_sq, 0 when dropped
  bool dropped = false;       // mechanical input at a frequency of the wrong sign
};

struct NoiseReport {
  double eta = 0.0;
  double s_added = 0.0;  // +inf when eta_zero
  double s_lower_bound = 0.0;
  double r_squared = 0.0;
  double commutator_residual = 0.0;  // all columns, no frequency-sign rule
  double sign_rule_residual = 0.0;   // surviving columns only
  bool eta_zero = false;
  std::vector<NoiseTerm> term_breakdown;
};

inline constexpr const char* kSignalIn = "e.ex";
inline constexpr const char* kSignalOut = "o.ex";

/// |T_{out,in}| between annihilation quadratures at the central frequency.
double efficiency(const TransferSolution& sol, const std::string& out_port = kSignalOut,
                  const std::string& in_port = kSignalIn);

/// Vacuum noise inputs and a coherent signal on `signal_in`.
NoiseReport added_noise(const TransferSolution& sol, const std::string& signal_in = kSignalIn,
                        const std::string& signal_out = kSignalOut);

/// (3/2) R^2 + |(1 - eta^2) / (2 eta^2) + R^2 / 2|. Requires eta > 0.
double noise_lower_bound(double eta, double r_squared);

/// |sum_j (|T_{o,j}|^2 - |T_{o,j'}|^2) - 1| over every central and sideband column.
/// With `sign_rule` the mechanical inputs at wrong-sign frequencies are skipped.
double commutator_residual(const TransferSolution& sol, bool sign_rule = false,
                           const std::string& signal_out = kSignalOut);

/// True when the mechanical input column `col` at frequency nu is identically zero.
bool mechanical_input_vanishes(const PortColumn& col, double nu);

struct StructureDiagnostics {
  bool applicable = false;     // false for the constant protocol
  double off_block = 0.0;      // max off-block |T| / ||T||_inf
  double tail_sideband = 0.0;  // max |T_k|, k > 2, / ||T||_inf
  double n_variation = 0.0;    // max relative change of T, T_1, T_2 for N >= 2 vs N = 2
  double n1_variation = 0.0;   // same, N = 1 vs N = 2
};

/// Family of solutions at the same point and different N (any order).
StructureDiagnostics structure_report(const std::vector<TransferSolution>& family);

/// Port group of a transfer-matrix index: 0 EM annihilation, 1 EM creation, 2 mechanical.
int port_group(const PortColumn& col);

double inf_norm(const Eigen::MatrixXcd& m);

}  // namespace xduct
