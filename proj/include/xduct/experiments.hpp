#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xduct/metrics.hpp"

namespace xduct {

/// Solves at one probe frequency with the protocol's own steady state.
TransferSolution solve_point(const ValidatedParams& p, const DriveProtocol& d, double omega);

/// Recursive minus dense transfer matrices (central and k <= 2),
/// max |difference| / max(1, ||T||_inf).
double oracle_difference(const ValidatedParams& p, const DriveProtocol& d, double omega);

struct Series {
  std::vector<double> eta;
  std::vector<double> s_added;
  std::vector<double> lower_bound;
  std::vector<double> commutator_residual;
  std::vector<double> sign_rule_residual;
  std::vector<double> oracle_diff;  // empty unless requested; parametric only
};

struct Crossing {
  std::string description;
  std::optional<double> value;  // Hz; empty when there is no sign change on the grid
};

struct SweepResult {
  std::string axis;             // "kappa_m_hz" or "omega_hz"
  std::vector<double> grid_hz;  // strictly increasing
  std::map<std::string, Series> series;  // "const", "pd1", "pd2"
  std::vector<Crossing> crossings;

  const Crossing* crossing(const std::string& description) const;
};

struct SweepOptions {
  bool oracle = false;  // also run the dense oracle at every parametric point
  bool refine = true;   // refine crossings with fresh solves
  int threads = -1;     // -1 reads XDUCT_THREADS, 0 means hardware concurrency
};

/// Base point of the kappa_m study: Delta = omega_m, lossless symmetric EM cavities.
SystemParams ideal_params(double omega_m_hz, double kappa_hz, double g_hz, double kappa_m_hz);

/// Reference device parameters, kappa_m included.
SystemParams reference_device_params();

std::vector<double> default_kappa_m_grid_hz();  // 1e-3 .. 1e3, 121 log points
std::vector<double> default_omega_grid_hz();    // 100 .. 1000 MHz, 181 points
std::vector<double> log_grid(double from, double to, int points);
std::vector<double> linear_grid(double from, double to, int points);

/// Constant, PD N=1 and PD N=2 at omega = omega_m over kappa_m / 2pi (Hz).
/// `base.kappa_m` is ignored; omega_drive is in rad/s.
SweepResult sweep_kappa_m(const SystemParams& base, double omega_drive,
                          const std::vector<double>& grid_hz, const SweepOptions& opt = {});

/// Same three protocols over the drive amplitude Omega / 2pi (Hz).
SweepResult sweep_omega(const SystemParams& base, const std::vector<double>& grid_hz,
                        const SweepOptions& opt = {});

/// Drive amplitude (rad/s) in [lo, hi] where eta = 1 within f_tol.
double tune_unity_efficiency(const ValidatedParams& p, int n_sidebands, double lo, double hi,
                             double f_tol = 1e-8);

struct ConvergenceRow {
  int n = 0;
  double eta = 0.0;
  double s_added = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // N = 1 .. N_max
  double max_deviation = 0.0;        // max relative |value(N) - value(2)| over N > 2
};

ConvergenceTable convergence_study(const ValidatedParams& p, double omega_drive, double omega,
                                   int n_max);

/// Worker count from XDUCT_THREADS (unset or 0: hardware concurrency).
int sweep_threads();

}  // namespace xduct
