#include "xduct/sideband_solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kEps = std::numeric_limits<double>::epsilon();

double dense_norm1(const Eigen::MatrixXcd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

void note_condition(TransferSolution& sol, double cond) {
  sol.condition_estimate = cond;
  if (!(cond <= kConditionWarning)) {
    std::ostringstream msg;
    msg << "condition number estimate " << cond << " exceeds " << kConditionWarning;
    sol.warnings.push_back(msg.str());
  }
}

Eigen::MatrixXcd transfer(const PortLayout& layout, const Eigen::MatrixXcd& x) {
  const Eigen::MatrixXcd b = layout.b_matrix.cast<cplx>();
  return b.transpose() * x * b;
}

// -i nu I - A_d, block-diagonal.
BlockDiag shifted_diagonal(const Mat6& a_d, double nu) {
  return BlockDiag::from_dense(Mat6(-kI * nu * Mat6::Identity() - a_d));
}

BlockDiag xi_plus_of(const SidebandMatrixSet& s, const BlockDiag& x) {
  BlockDiag xi;
  xi[1] = s.q_cm * x[2] * s.q_mc;
  xi[2] = s.q_ma * x[0] * s.q_am;
  return xi;
}

BlockDiag xi_minus_of(const SidebandMatrixSet& s, const BlockDiag& x) {
  BlockDiag xi;
  xi[0] = s.q_am * x[2] * s.q_ma;
  xi[2] = s.q_mc * x[1] * s.q_cm;
  return xi;
}

BlockDiag invert_blocks(const BlockDiag& m, double& min_rcond, const std::string& where) {
  BlockDiag out;
  for (int b = 0; b < 3; ++b) {
    double rcond = 0.0;
    if (!invert2(m[b], out[b], rcond)) {
      std::ostringstream msg;
      msg << "singular block (" << where << ", block=" << (b + 1) << ")";
      throw SingularMatrixError(msg.str());
    }
    min_rcond = std::min(min_rcond, rcond);
  }
  return out;
}

}  // namespace

cplx TransferSolution::element(const std::string& out, Quadrature qo, const std::string& in,
                               Quadrature qi) const {
  return t_central(port_map.column(out, qo), port_map.column(in, qi));
}

TransferSolution solve_constant(const Mat6& a, const PortLayout& layout, double omega,
                                double omega_m) {
  const Mat6 m = -kI * omega * Mat6::Identity() - a;
  Eigen::PartialPivLU<Mat6> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > kEps)) {
    throw SingularMatrixError("singular system (-i omega I - A): undamped resonance at probe frequency");
  }
  TransferSolution sol;
  sol.x_central = lu.inverse();
  sol.t_central = transfer(layout, sol.x_central) -
                  Eigen::MatrixXcd::Identity(layout.n_columns(), layout.n_columns());
  sol.port_map = layout;
  sol.probe_omega = omega;
  sol.omega_m = omega_m;
  sol.mode = DriveMode::Constant;
  sol.n_sidebands = 0;
  note_condition(sol, dense_norm1(m) * dense_norm1(sol.x_central));
  return sol;
}

RecursionChain build_recursion(const SidebandMatrixSet& mats, double omega, int n) {
  if (n < 1) throw ValidationError("n_sidebands must be >= 1");
  if (!(mats.kappa_m > 0.0)) {
    throw ValidationError("kappa_m must be positive for the parametric solver");
  }
  RecursionChain chain;
  chain.probe_omega = omega;
  chain.n_sidebands = n;
  for (int sign : {+1, -1}) {
    auto& xs = sign > 0 ? chain.x_plus : chain.x_minus;
    auto& xis = sign > 0 ? chain.xi_plus : chain.xi_minus;
    for (int k = n; k >= 1; --k) {
      BlockDiag m = shifted_diagonal(mats.a_d, omega + sign * 2.0 * k * mats.omega_m);
      if (k < n) {
        for (int b = 0; b < 3; ++b) m[b] -= xis.at(k + 1)[b];
      }
      std::ostringstream where;
      where << "sign=" << (sign > 0 ? '+' : '-') << ", k=" << k;
      xs[k] = invert_blocks(m, chain.min_rcond, where.str());
      xis[k] = sign > 0 ? xi_plus_of(mats, xs[k]) : xi_minus_of(mats, xs[k]);
    }
  }
  return chain;
}

TransferSolution solve_parametric(const SidebandMatrixSet& mats, const PortLayout& layout,
                                  double omega, int n) {
  const RecursionChain chain = build_recursion(mats, omega, n);
  BlockDiag m = shifted_diagonal(mats.a_d, omega);
  for (int b = 0; b < 3; ++b) m[b] -= chain.xi_minus.at(1)[b] + chain.xi_plus.at(1)[b];
  double min_rcond = 1.0;
  BlockDiag x;
  try {
    x = invert_blocks(m, min_rcond, "central");
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(std::string(e.what()) +
                              ": undamped mode or instability at probe frequency");
  }

  TransferSolution sol;
  sol.x_central = x.dense();
  const int np = layout.n_columns();
  sol.t_central = transfer(layout, sol.x_central) - Eigen::MatrixXcd::Identity(np, np);
  for (int sign : {+1, -1}) {
    const auto& xs = sign > 0 ? chain.x_plus : chain.x_minus;
    const Mat6& a_pm = sign > 0 ? mats.a_plus : mats.a_minus;
    Mat6 product = sol.x_central;
    for (int k = 1; k <= std::min(n, 2); ++k) {
      product = product * a_pm * xs.at(k).dense();
      sol.t_sideband[SidebandKey{sign, k}] = transfer(layout, product);
    }
  }
  sol.port_map = layout;
  sol.probe_omega = omega;
  sol.omega_m = mats.omega_m;
  sol.mode = DriveMode::Parametric;
  sol.n_sidebands = n;
  const double central_cond = dense_norm1(m.dense()) * dense_norm1(sol.x_central);
  note_condition(sol, std::max(central_cond, 1.0 / chain.min_rcond));
  return sol;
}

namespace {

Eigen::MatrixXcd extended_matrix(const SidebandMatrixSet& mats, double omega, int n,
                                 bool with_probe) {
  const int blocks = 2 * n + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(6 * blocks, 6 * blocks);
  for (int j = -n; j <= n; ++j) {
    const int r = 6 * (j + n);
    const double nu = (with_probe ? omega : 0.0) + 2.0 * j * mats.omega_m;
    m.block<6, 6>(r, r) = -kI * nu * Mat6::Identity() - mats.a_d;
    if (j > -n) m.block<6, 6>(r, r - 6) = -mats.a_minus;
    if (j < n) m.block<6, 6>(r, r + 6) = -mats.a_plus;
  }
  return m;
}

}  // namespace

TransferSolution dense_oracle(const SidebandMatrixSet& mats, const PortLayout& layout,
                              double omega, int n) {
  if (n < 1) throw ValidationError("n_sidebands must be >= 1");
  const Eigen::MatrixXcd m = extended_matrix(mats, omega, n, true);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > kEps)) throw SingularMatrixError("singular extended system");
  const Eigen::MatrixXcd inv = lu.inverse();

  TransferSolution sol;
  const int c = 6 * n;
  sol.x_central = inv.block<6, 6>(c, c);
  const int np = layout.n_columns();
  sol.t_central = transfer(layout, sol.x_central) - Eigen::MatrixXcd::Identity(np, np);
  for (int sign : {+1, -1}) {
    for (int k = 1; k <= n; ++k) {
      sol.t_sideband[SidebandKey{sign, k}] =
          transfer(layout, inv.block(c, c + 6 * sign * k, 6, 6));
    }
  }
  sol.port_map = layout;
  sol.probe_omega = omega;
  sol.omega_m = mats.omega_m;
  sol.mode = DriveMode::Parametric;
  sol.n_sidebands = n;
  note_condition(sol, dense_norm1(m) * dense_norm1(inv));
  return sol;
}

namespace {

StabilityReport from_eigenvalues(const Eigen::MatrixXcd& generator) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(generator, false);
  StabilityReport out;
  out.max_real_part = es.eigenvalues().real().maxCoeff();
  out.stable = out.max_real_part < 0.0;
  return out;
}

}  // namespace

StabilityReport assess_stability(const Mat6& a_constant) {
  return from_eigenvalues(Eigen::MatrixXcd(a_constant));
}

StabilityReport assess_stability(const SidebandMatrixSet& mats, int n) {
  // The generator is A_bar + i diag(2 j omega_m), i.e. minus the extended matrix at omega = 0.
  return from_eigenvalues(-extended_matrix(mats, 0.0, n, false));
}

}  // namespace xduct
