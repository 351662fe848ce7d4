#include "xduct/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "xduct/units.hpp"

namespace xduct::output {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << sweep.axis << ",eta_const,S_const,eta_pd1,S_pd1,eta_pd2,S_pd2,lb_pd2,comm_resid\n";
  const Series& c = sweep.series.at("const");
  const Series& p1 = sweep.series.at("pd1");
  const Series& p2 = sweep.series.at("pd2");
  for (std::size_t i = 0; i < sweep.grid_hz.size(); ++i) {
    const double resid = std::max(
        {c.commutator_residual[i], p1.commutator_residual[i], p2.commutator_residual[i]});
    const double row[] = {sweep.grid_hz[i], c.eta[i],  c.s_added[i],     p1.eta[i], p1.s_added[i],
                          p2.eta[i],        p2.s_added[i], p2.lower_bound[i], resid};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k) out << ',';
      out << format_double(row[k]);
    }
    out << '\n';
  }
}

namespace {

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json matrix_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const NoiseReport& r) {
  nlohmann::json j;
  j["eta"] = r.eta;
  j["s_added"] = finite_or_null(r.s_added);
  j["s_lower_bound"] = finite_or_null(r.s_lower_bound);
  j["r_squared"] = finite_or_null(r.r_squared);
  j["eta_zero"] = r.eta_zero;
  j["commutator_residual"] = r.commutator_residual;
  j["sign_rule_residual"] = r.sign_rule_residual;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.term_breakdown) {
    terms.push_back({{"source", t.label},
                     {"sideband", t.sideband},
                     {"weight", t.weight},
                     {"magnitude_sq", t.magnitude_sq},
                     {"contribution", t.contribution},
                     {"dropped", t.dropped}});
  }
  j["term_breakdown"] = terms;
  return j;
}

nlohmann::json to_json(const TransferSolution& sol) {
  nlohmann::json j;
  j["protocol"] = sol.mode == DriveMode::Constant ? "constant" : "parametric";
  j["n_sidebands"] = sol.n_sidebands;
  j["probe_omega_hz"] = units::rad_to_hz(sol.probe_omega);
  j["omega_m_hz"] = units::rad_to_hz(sol.omega_m);
  j["condition_estimate"] = sol.condition_estimate;
  j["warnings"] = sol.warnings;
  nlohmann::json ports = nlohmann::json::array();
  for (const auto& c : sol.port_map.columns) {
    ports.push_back(c.label + (c.quadrature == Quadrature::Creation ? "'" : ""));
  }
  j["ports"] = ports;
  j["t_central"] = matrix_json(sol.t_central);
  nlohmann::json sidebands = nlohmann::json::object();
  for (const auto& [key, t] : sol.t_sideband) {
    sidebands[(key.sign > 0 ? "+" : "-") + std::to_string(key.k)] = matrix_json(t);
  }
  j["t_sideband"] = sidebands;
  return j;
}

nlohmann::json to_json(const StabilityReport& s) {
  return {{"stable", s.stable}, {"max_real_part", s.max_real_part}, {"advisory", true}};
}

nlohmann::json to_json(const SweepResult& sweep) {
  nlohmann::json j;
  j["axis"] = sweep.axis;
  j["points"] = sweep.grid_hz.size();
  nlohmann::json crossings = nlohmann::json::object();
  for (const auto& c : sweep.crossings) {
    crossings[c.description] = c.value ? nlohmann::json(*c.value) : nlohmann::json(nullptr);
  }
  j["crossings"] = crossings;
  return j;
}

}  // namespace xduct::output
