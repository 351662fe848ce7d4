#pragma once

#include <complex>
#include <vector>

namespace xduct {

using cplx = std::complex<double>;

/// Physical rates of the three-cavity transducer, all in rad/s.
///
/// Detunings are taken with respect to the pump lasers; the mechanical mode is
/// not rotated. Every external coupling must satisfy kappa_i_ex <= kappa_i,
/// the remainder being the internal loss port of cavity i.
struct SystemParams {
  double omega_m = 0.0;
  double delta_o = 0.0;
  double delta_e = 0.0;
  double kappa_o = 0.0;
  double kappa_e = 0.0;
  double kappa_m = 0.0;
  double kappa_o_ex = 0.0;
  double kappa_e_ex = 0.0;
  double kappa_m_ex = 0.0;
  double g_o = 0.0;
  double g_e = 0.0;

  double kappa_o_int() const { return kappa_o - kappa_o_ex; }
  double kappa_e_int() const { return kappa_e - kappa_e_ex; }
};

/// SystemParams that passed validate(). Only validate() can construct one.
class ValidatedParams {
 public:
  const SystemParams& get() const { return params_; }
  const SystemParams* operator->() const { return &params_; }

 private:
  explicit ValidatedParams(const SystemParams& p) : params_(p) {}
  friend ValidatedParams validate(const SystemParams& p);

  SystemParams params_;
};

/// Throws ValidationError naming the first violated invariant.
ValidatedParams validate(const SystemParams& p);

enum class DriveMode { Constant, Parametric };

/// Symmetric pump on both EM cavities: Omega(t) = Omega (Constant) or
/// Omega * exp(-2i omega_m t) (Parametric). n_sidebands is the truncation
/// order and is only consulted for the parametric mode.
struct DriveProtocol {
  DriveMode mode = DriveMode::Constant;
  double omega_drive = 0.0;  // rad/s
  int n_sidebands = 1;

  static DriveProtocol constant(double omega_drive);
  static DriveProtocol parametric(double omega_drive, int n_sidebands);
};

void validate(const DriveProtocol& d);

/// Classical steady state of the pump amplitudes. For the parametric drive the
/// amplitudes are the envelopes multiplying exp(-2i omega_m t).
struct SteadyAmplitudes {
  DriveMode mode = DriveMode::Constant;
  cplx alpha_o;
  cplx alpha_e;
  cplx g_eff_o;  // g_o * alpha_o
  cplx g_eff_e;  // g_e * alpha_e
};

SteadyAmplitudes steady_amplitude(const ValidatedParams& p, const DriveProtocol& d);

/// Right-hand side of the classical amplitude equation
/// d(alpha)/dt = -i Delta alpha - kappa alpha / 2 - i Omega(t).
cplx classical_rhs(double delta, double kappa, cplx alpha, cplx drive);

/// Pump amplitude Omega(t) at time t for the given protocol.
cplx drive_at(const DriveProtocol& d, double omega_m, double t);

struct ClassicalTrajectory {
  std::vector<double> t;
  std::vector<cplx> alpha_o;
  std::vector<cplx> alpha_e;
  double max_relative_drift = 0.0;  // half-step comparison result
};

/// Fixed-step RK4 integration of the pump amplitudes from alpha(0) = 0.
/// Samples are recorded every `sample_every` steps plus the final time.
/// The run is repeated with dt/2; a relative drift above 1e-6 throws StepSizeError.
ClassicalTrajectory integrate_classical_amplitude(const ValidatedParams& p, const DriveProtocol& d,
                                                  double t_end, double dt, int sample_every = 1);

}  // namespace xduct
