#pragma once

#include <optional>
#include <string>

#include "xduct/params.hpp"

namespace xduct {

/// Parsed run configuration. Frequencies in the file are value/2pi in Hz;
/// every field below is already converted to rad/s.
///
///   [params]  omega_m_hz delta_o_hz delta_e_hz kappa_o_hz kappa_e_hz kappa_m_hz
///             kappa_o_ex_hz kappa_e_ex_hz [kappa_m_ex_hz] g_o_hz g_e_hz
///   [drive]   mode = "constant" | "parametric", omega_hz (or equal omega_o_hz,
///             omega_e_hz), n_sidebands
///   [probe]   omega_hz = number | "omega-m"
///   [sweep]   from_hz to_hz points
///   [tune]    lo_hz hi_hz n_sidebands
struct RunConfig {
  SystemParams params;
  DriveProtocol drive;
  std::optional<double> probe_omega;  // defaults to omega_m

  struct Sweep {
    std::optional<double> from_hz;
    std::optional<double> to_hz;
    std::optional<int> points;
  } sweep;

  struct Tune {
    double lo = 0.0;  // rad/s
    double hi = 0.0;
    int n_sidebands = 2;
    bool has_bracket = false;
  } tune;

  double probe_or_omega_m() const { return probe_omega.value_or(params.omega_m); }
};

/// Throws ConfigError naming the offending key or line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace xduct
