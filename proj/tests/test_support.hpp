#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "xduct/experiments.hpp"
#include "xduct/units.hpp"

namespace xduct::testing {

inline constexpr double kLosslessOmegaMHz = 1.4732e6;
inline constexpr double kLosslessKappaHz = 2.5e6;
inline constexpr double kLosslessGHz = 3.8;
inline constexpr double kLosslessDriveHz = 500e6;

inline SystemParams lossless_params(double kappa_m_hz) {
  return ideal_params(kLosslessOmegaMHz, kLosslessKappaHz, kLosslessGHz, kappa_m_hz);
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::abs(b);
}

/// Rates log-uniform within a factor 10^0.3 of the reference device, external fraction in
/// [0.2, 1], drive amplitude 200..1000 MHz (returned in rad/s).
struct RandomPoint {
  SystemParams params;
  double omega_drive = 0.0;
};

inline RandomPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> spread(-0.3, 0.3);
  std::uniform_real_distribution<double> frac(0.2, 1.0);
  std::uniform_real_distribution<double> drive(200e6, 1000e6);
  auto jitter = [&](double v) { return v * std::pow(10.0, spread(rng)); };
  const SystemParams t = reference_device_params();
  RandomPoint r;
  SystemParams& p = r.params;
  p.omega_m = jitter(t.omega_m);
  p.delta_o = jitter(t.delta_o);
  p.delta_e = jitter(t.delta_e);
  p.kappa_o = jitter(t.kappa_o);
  p.kappa_e = jitter(t.kappa_e);
  p.kappa_m = p.kappa_m_ex = jitter(t.kappa_m);
  p.kappa_o_ex = frac(rng) * p.kappa_o;
  p.kappa_e_ex = frac(rng) * p.kappa_e;
  p.g_o = jitter(t.g_o);
  p.g_e = jitter(t.g_e);
  r.omega_drive = units::hz_to_rad(drive(rng));
  return r;
}

}  // namespace xduct::testing
