#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "xduct/params.hpp"

namespace xduct {

using Mat6 = Eigen::Matrix<cplx, 6, 6>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;

/// Row indices of the state vector [a_o, a_e, a_o^dag, a_e^dag, a_m, a_m^dag].
namespace state {
inline constexpr int kO = 0;
inline constexpr int kE = 1;
inline constexpr int kOd = 2;
inline constexpr int kEd = 3;
inline constexpr int kM = 4;
inline constexpr int kMd = 5;
}  // namespace state

enum class Quadrature { Annihilation, Creation };

enum class Cavity { Optical, Electrical, Mechanical };

struct Port {
  std::string label;  // "o.ex", "o.int", "e.ex", "e.int", "m"
  Cavity cavity;
  double coupling;  // rad/s
};

struct PortColumn {
  std::string label;
  Cavity cavity;
  Quadrature quadrature;
};

/// Input-coupling matrix and the labels of its columns. Output rows of every
/// transfer matrix use the same labels and order.
struct PortLayout {
  std::vector<Port> ports_o;
  std::vector<Port> ports_e;
  std::vector<Port> ports_m;
  Eigen::MatrixXd b_matrix;  // 6 x n_columns
  std::vector<PortColumn> columns;

  int n_columns() const { return static_cast<int>(columns.size()); }
  bool has(const std::string& label) const;
  /// Throws UnknownPortError if the label is absent (e.g. an elided port).
  int column(const std::string& label, Quadrature q) const;
};

/// Ports with zero coupling are elided. Column order: annihilation columns of
/// the o then e ports, the matching creation columns, then m and m^dag.
PortLayout build_port_layout(const ValidatedParams& p);

/// Fourier blocks of the parametrically driven drift matrix
/// A(t) = A_d + A_- e^{-2i w_m t} + A_+ e^{2i w_m t}.
struct SidebandMatrixSet {
  Mat6 a_d;
  Mat6 a_minus;
  Mat6 a_plus;
  Mat2 q_am;
  Mat2 q_mc;
  Mat2 q_cm;
  Mat2 q_ma;
  double omega_m = 0.0;
  double kappa_m = 0.0;
};

/// Diagonal part of the drift matrix (couplings switched off).
Mat6 build_drift_diagonal(const ValidatedParams& p);

Mat6 build_drift_constant(const ValidatedParams& p, const SteadyAmplitudes& amps);

SidebandMatrixSet build_drift_fourier(const ValidatedParams& p, const SteadyAmplitudes& amps);

/// Classical drive term of the linearized equations. Not used by the frequency solve.
Vec6 build_drive_vector(const ValidatedParams& p, const SteadyAmplitudes& amps);

}  // namespace xduct
