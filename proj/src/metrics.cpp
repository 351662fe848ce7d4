#include "xduct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

std::string term_label(const PortColumn& col, int sideband) {
  std::string label = col.label;
  if (col.quadrature == Quadrature::Creation) label += "'";
  if (sideband != 0) label += (sideband > 0 ? "@+" : "@-") + std::to_string(std::abs(sideband));
  return label;
}

struct Column {
  const PortColumn* port;
  int sideband;
  double nu;
  cplx value;
};

// Every input column of row `row`, central first, then T_+^[k], T_-^[k] in key order.
std::vector<Column> row_columns(const TransferSolution& sol, int row) {
  std::vector<Column> out;
  const auto& cols = sol.port_map.columns;
  for (int j = 0; j < sol.port_map.n_columns(); ++j) {
    out.push_back({&cols[j], 0, sol.probe_omega, sol.t_central(row, j)});
  }
  for (const auto& [key, t] : sol.t_sideband) {
    const int s = key.sign * key.k;
    const double nu = sol.probe_omega + 2.0 * s * sol.omega_m;
    for (int j = 0; j < sol.port_map.n_columns(); ++j) out.push_back({&cols[j], s, nu, t(row, j)});
  }
  return out;
}

double relative_change(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& ref) {
  const double scale = ref.cwiseAbs().maxCoeff();
  const double diff = (a - ref).cwiseAbs().maxCoeff();
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

int port_group(const PortColumn& col) {
  if (col.cavity == Cavity::Mechanical) return 2;
  return col.quadrature == Quadrature::Annihilation ? 0 : 1;
}

double inf_norm(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

bool mechanical_input_vanishes(const PortColumn& col, double nu) {
  if (col.cavity != Cavity::Mechanical) return false;
  return col.quadrature == Quadrature::Annihilation ? nu < 0.0 : nu > 0.0;
}

double efficiency(const TransferSolution& sol, const std::string& out_port,
                  const std::string& in_port) {
  return std::abs(sol.element(out_port, Quadrature::Annihilation, in_port, Quadrature::Annihilation));
}

double noise_lower_bound(double eta, double r_squared) {
  if (!(eta > 0.0)) throw ValidationError("noise lower bound requires eta > 0");
  const double eta2 = eta * eta;
  return 1.5 * r_squared + std::abs((1.0 - eta2) / (2.0 * eta2) + 0.5 * r_squared);
}

double commutator_residual(const TransferSolution& sol, bool sign_rule,
                           const std::string& signal_out) {
  const int row = sol.port_map.column(signal_out, Quadrature::Annihilation);
  double sum = 0.0;
  for (const Column& c : row_columns(sol, row)) {
    if (sign_rule && mechanical_input_vanishes(*c.port, c.nu)) continue;
    const double sign = c.port->quadrature == Quadrature::Annihilation ? 1.0 : -1.0;
    sum += sign * std::norm(c.value);
  }
  return std::abs(sum - 1.0);
}

NoiseReport added_noise(const TransferSolution& sol, const std::string& signal_in,
                        const std::string& signal_out) {
  const int row = sol.port_map.column(signal_out, Quadrature::Annihilation);
  const cplx t_signal = sol.element(signal_out, Quadrature::Annihilation, signal_in,
                                    Quadrature::Annihilation);
  const cplx t_conj =
      sol.element(signal_out, Quadrature::Annihilation, signal_in, Quadrature::Creation);

  NoiseReport r;
  r.eta = std::abs(t_signal);
  double eta2_s = 0.0;
  for (const Column& c : row_columns(sol, row)) {
    const bool is_signal = c.sideband == 0 && c.port->label == signal_in;
    if (is_signal && c.port->quadrature == Quadrature::Annihilation) continue;
    NoiseTerm term;
    term.label = term_label(*c.port, c.sideband);
    term.sideband = c.sideband;
    term.weight = is_signal ? 1.5 : 0.5;
    term.magnitude_sq = std::norm(c.value);
    term.dropped = mechanical_input_vanishes(*c.port, c.nu);
    term.contribution = term.dropped ? 0.0 : term.weight * term.magnitude_sq;
    eta2_s += term.contribution;
    r.term_breakdown.push_back(std::move(term));
  }

  r.commutator_residual = commutator_residual(sol, false, signal_out);
  r.sign_rule_residual = commutator_residual(sol, true, signal_out);
  if (r.eta == 0.0) {
    r.eta_zero = true;
    r.s_added = std::numeric_limits<double>::infinity();
    r.s_lower_bound = std::numeric_limits<double>::infinity();
    r.r_squared = std::numeric_limits<double>::infinity();
    return r;
  }
  const double eta2 = r.eta * r.eta;
  r.s_added = eta2_s / eta2;
  r.r_squared = std::norm(t_conj) / eta2;
  r.s_lower_bound = noise_lower_bound(r.eta, r.r_squared);
  return r;
}

StructureDiagnostics structure_report(const std::vector<TransferSolution>& family) {
  StructureDiagnostics d;
  const TransferSolution* ref = nullptr;
  const TransferSolution* n1 = nullptr;
  for (const auto& s : family) {
    if (s.mode != DriveMode::Parametric) return d;
    if (s.n_sidebands == 2) ref = &s;
    if (s.n_sidebands == 1) n1 = &s;
  }
  d.applicable = !family.empty();

  for (const auto& s : family) {
    const double scale = std::max(inf_norm(s.t_central), std::numeric_limits<double>::min());
    const auto& cols = s.port_map.columns;
    for (int r = 0; r < s.t_central.rows(); ++r) {
      for (int c = 0; c < s.t_central.cols(); ++c) {
        if (port_group(cols[r]) != port_group(cols[c])) {
          d.off_block = std::max(d.off_block, std::abs(s.t_central(r, c)) / scale);
        }
      }
    }
    for (const auto& [key, t] : s.t_sideband) {
      if (key.k > 2) d.tail_sideband = std::max(d.tail_sideband, t.cwiseAbs().maxCoeff() / scale);
    }
  }

  auto variation = [](const TransferSolution& a, const TransferSolution& b) {
    double v = relative_change(a.t_central, b.t_central);
    for (const auto& [key, t] : b.t_sideband) {
      if (key.k > 2) continue;
      const auto it = a.t_sideband.find(key);
      if (it != a.t_sideband.end()) v = std::max(v, relative_change(it->second, t));
    }
    return v;
  };
  if (ref != nullptr) {
    for (const auto& s : family) {
      if (s.n_sidebands > 2) d.n_variation = std::max(d.n_variation, variation(s, *ref));
    }
    if (n1 != nullptr) d.n1_variation = variation(*n1, *ref);
  }
  return d;
}

}  // namespace xduct
