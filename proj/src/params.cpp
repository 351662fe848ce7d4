#include "xduct/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ValidationError(std::string("non-finite value: ") + name);
}

void require_rate(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) throw ValidationError(std::string("negative rate: ") + name);
}

void require_port(double ex, double total, const char* ex_name, const char* total_name) {
  if (ex > total) {
    throw ValidationError(std::string("external coupling exceeds total: ") + ex_name + " > " +
                          total_name);
  }
}

cplx checked_ratio(cplx numerator, cplx denominator, const char* cavity) {
  if (denominator == cplx{0.0, 0.0}) {
    throw SingularAmplitudeError(std::string("steady-state amplitude is singular for cavity ") +
                                 cavity + " (undamped and resonantly driven)");
  }
  return numerator / denominator;
}

}  // namespace

ValidatedParams validate(const SystemParams& p) {
  require_finite(p.omega_m, "omega_m");
  if (p.omega_m <= 0.0) throw ValidationError("omega_m must be positive");
  require_finite(p.delta_o, "delta_o");
  require_finite(p.delta_e, "delta_e");
  require_rate(p.kappa_o, "kappa_o");
  require_rate(p.kappa_e, "kappa_e");
  require_rate(p.kappa_m, "kappa_m");
  require_rate(p.kappa_o_ex, "kappa_o_ex");
  require_rate(p.kappa_e_ex, "kappa_e_ex");
  require_rate(p.kappa_m_ex, "kappa_m_ex");
  require_rate(p.g_o, "g_o");
  require_rate(p.g_e, "g_e");
  require_port(p.kappa_o_ex, p.kappa_o, "kappa_o_ex", "kappa_o");
  require_port(p.kappa_e_ex, p.kappa_e, "kappa_e_ex", "kappa_e");
  require_port(p.kappa_m_ex, p.kappa_m, "kappa_m_ex", "kappa_m");
  // The mechanical cavity has a single port.
  if (std::abs(p.kappa_m_ex - p.kappa_m) > 1e-12 * p.kappa_m) {
    throw ValidationError("mechanical cavity has a single port: kappa_m_ex must equal kappa_m");
  }
  return ValidatedParams(p);
}

DriveProtocol DriveProtocol::constant(double omega_drive) {
  return DriveProtocol{DriveMode::Constant, omega_drive, 1};
}

DriveProtocol DriveProtocol::parametric(double omega_drive, int n_sidebands) {
  return DriveProtocol{DriveMode::Parametric, omega_drive, n_sidebands};
}

void validate(const DriveProtocol& d) {
  require_finite(d.omega_drive, "omega_drive");
  if (d.omega_drive < 0.0) throw ValidationError("negative drive amplitude: omega_drive");
  if (d.n_sidebands < 1) throw ValidationError("n_sidebands must be >= 1");
}

SteadyAmplitudes steady_amplitude(const ValidatedParams& vp, const DriveProtocol& d) {
  validate(d);
  const SystemParams& p = vp.get();
  const cplx two_omega{2.0 * d.omega_drive, 0.0};
  SteadyAmplitudes out;
  out.mode = d.mode;
  if (d.mode == DriveMode::Constant) {
    out.alpha_o = checked_ratio(two_omega, cplx{-2.0 * p.delta_o, p.kappa_o}, "o");
    out.alpha_e = checked_ratio(two_omega, cplx{-2.0 * p.delta_e, p.kappa_e}, "e");
  } else {
    out.alpha_o =
        checked_ratio(two_omega, cplx{4.0 * p.omega_m - 2.0 * p.delta_o, p.kappa_o}, "o");
    out.alpha_e =
        checked_ratio(two_omega, cplx{4.0 * p.omega_m - 2.0 * p.delta_e, p.kappa_e}, "e");
  }
  out.g_eff_o = p.g_o * out.alpha_o;
  out.g_eff_e = p.g_e * out.alpha_e;
  return out;
}

cplx classical_rhs(double delta, double kappa, cplx alpha, cplx drive) {
  constexpr cplx i{0.0, 1.0};
  return -i * delta * alpha - 0.5 * kappa * alpha - i * drive;
}

cplx drive_at(const DriveProtocol& d, double omega_m, double t) {
  if (d.mode == DriveMode::Constant) return {d.omega_drive, 0.0};
  return d.omega_drive * std::exp(cplx{0.0, -2.0 * omega_m * t});
}

namespace {

struct Rk4Samples {
  std::vector<double> t;
  std::vector<cplx> ao;
  std::vector<cplx> ae;
};

Rk4Samples run_rk4(const SystemParams& p, const DriveProtocol& d, double t_end, long steps,
                   long stride) {
  const double h = t_end / static_cast<double>(steps);
  Rk4Samples out;
  const auto reserve = static_cast<std::size_t>(steps / stride + 2);
  out.t.reserve(reserve);
  out.ao.reserve(reserve);
  out.ae.reserve(reserve);

  cplx ao{0.0, 0.0};
  cplx ae{0.0, 0.0};
  auto record = [&](double t) {
    out.t.push_back(t);
    out.ao.push_back(ao);
    out.ae.push_back(ae);
  };
  auto step = [&](cplx a, double delta, double kappa, double t) {
    const cplx f0 = drive_at(d, p.omega_m, t);
    const cplx fh = drive_at(d, p.omega_m, t + 0.5 * h);
    const cplx f1 = drive_at(d, p.omega_m, t + h);
    const cplx k1 = classical_rhs(delta, kappa, a, f0);
    const cplx k2 = classical_rhs(delta, kappa, a + 0.5 * h * k1, fh);
    const cplx k3 = classical_rhs(delta, kappa, a + 0.5 * h * k2, fh);
    const cplx k4 = classical_rhs(delta, kappa, a + h * k3, f1);
    return a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  record(0.0);
  for (long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h;
    ao = step(ao, p.delta_o, p.kappa_o, t);
    ae = step(ae, p.delta_e, p.kappa_e, t);
    if ((n + 1) % stride == 0 || n + 1 == steps) record(static_cast<double>(n + 1) * h);
  }
  return out;
}

}  // namespace

ClassicalTrajectory integrate_classical_amplitude(const ValidatedParams& vp, const DriveProtocol& d,
                                                  double t_end, double dt, int sample_every) {
  validate(d);
  const SystemParams& p = vp.get();
  if (!(t_end > 0.0) || !(dt > 0.0)) throw ValidationError("t_end and dt must be positive");
  if (sample_every < 1) throw ValidationError("sample_every must be >= 1");
  const double fastest = std::max({p.kappa_o, p.kappa_e, std::abs(p.delta_o),
                                   std::abs(p.delta_e), p.omega_m});
  if (dt >= 0.1 / fastest) {
    throw ValidationError("dt must be below 0.1 / max(kappa_i, |delta_i|, omega_m)");
  }

  const auto steps = static_cast<long>(std::ceil(t_end / dt));
  Rk4Samples coarse = run_rk4(p, d, t_end, steps, sample_every);
  Rk4Samples fine = run_rk4(p, d, t_end, 2 * steps, 2L * sample_every);

  double scale = 0.0;
  double diff = 0.0;
  const std::size_t n = std::min(coarse.t.size(), fine.t.size());
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max({scale, std::abs(fine.ao[k]), std::abs(fine.ae[k])});
    diff = std::max({diff, std::abs(coarse.ao[k] - fine.ao[k]), std::abs(coarse.ae[k] - fine.ae[k])});
  }
  const double drift = scale > 0.0 ? diff / scale : 0.0;
  if (drift > 1e-6) {
    throw StepSizeError("step size too coarse: half-step relative drift " + std::to_string(drift));
  }

  ClassicalTrajectory out;
  out.t = std::move(fine.t);
  out.alpha_o = std::move(fine.ao);
  out.alpha_e = std::move(fine.ae);
  out.max_relative_drift = drift;
  return out;
}

}  // namespace xduct
