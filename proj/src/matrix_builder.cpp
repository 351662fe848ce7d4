#include "xduct/matrix_builder.hpp"

#include <cmath>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

constexpr cplx kI{0.0, 1.0};

void add_port(std::vector<Port>& ports, const char* label, Cavity cavity, double coupling) {
  if (coupling > 0.0) ports.push_back(Port{label, cavity, coupling});
}

}  // namespace

bool PortLayout::has(const std::string& label) const {
  for (const auto& c : columns) {
    if (c.label == label) return true;
  }
  return false;
}

int PortLayout::column(const std::string& label, Quadrature q) const {
  for (int i = 0; i < n_columns(); ++i) {
    if (columns[i].label == label && columns[i].quadrature == q) return i;
  }
  throw UnknownPortError("unknown port: " + label);
}

PortLayout build_port_layout(const ValidatedParams& vp) {
  const SystemParams& p = vp.get();
  PortLayout out;
  add_port(out.ports_o, "o.ex", Cavity::Optical, p.kappa_o_ex);
  add_port(out.ports_o, "o.int", Cavity::Optical, p.kappa_o_int());
  add_port(out.ports_e, "e.ex", Cavity::Electrical, p.kappa_e_ex);
  add_port(out.ports_e, "e.int", Cavity::Electrical, p.kappa_e_int());
  add_port(out.ports_m, "m", Cavity::Mechanical, p.kappa_m_ex);

  const int ko = static_cast<int>(out.ports_o.size());
  const int ke = static_cast<int>(out.ports_e.size());
  const int km = static_cast<int>(out.ports_m.size());
  const int n = 2 * (ko + ke) + 2 * km;
  out.b_matrix = Eigen::MatrixXd::Zero(6, n);
  out.columns.reserve(n);

  int col = 0;
  for (Quadrature q : {Quadrature::Annihilation, Quadrature::Creation}) {
    const int row_o = q == Quadrature::Annihilation ? state::kO : state::kOd;
    const int row_e = q == Quadrature::Annihilation ? state::kE : state::kEd;
    for (const auto& port : out.ports_o) {
      out.b_matrix(row_o, col++) = std::sqrt(port.coupling);
      out.columns.push_back({port.label, port.cavity, q});
    }
    for (const auto& port : out.ports_e) {
      out.b_matrix(row_e, col++) = std::sqrt(port.coupling);
      out.columns.push_back({port.label, port.cavity, q});
    }
  }
  for (const auto& port : out.ports_m) {
    out.b_matrix(state::kM, col++) = std::sqrt(port.coupling);
    out.columns.push_back({port.label, port.cavity, Quadrature::Annihilation});
    out.b_matrix(state::kMd, col++) = std::sqrt(port.coupling);
    out.columns.push_back({port.label, port.cavity, Quadrature::Creation});
  }
  return out;
}

Mat6 build_drift_diagonal(const ValidatedParams& vp) {
  const SystemParams& p = vp.get();
  Mat6 a = Mat6::Zero();
  a(state::kO, state::kO) = -kI * p.delta_o - 0.5 * p.kappa_o;
  a(state::kE, state::kE) = -kI * p.delta_e - 0.5 * p.kappa_e;
  a(state::kOd, state::kOd) = kI * p.delta_o - 0.5 * p.kappa_o;
  a(state::kEd, state::kEd) = kI * p.delta_e - 0.5 * p.kappa_e;
  a(state::kM, state::kM) = -kI * p.omega_m - 0.5 * p.kappa_m;
  a(state::kMd, state::kMd) = kI * p.omega_m - 0.5 * p.kappa_m;
  return a;
}

Mat6 build_drift_constant(const ValidatedParams& p, const SteadyAmplitudes& amps) {
  const cplx go = amps.g_eff_o;
  const cplx ge = amps.g_eff_e;
  Mat6 a = build_drift_diagonal(p);
  for (int m : {state::kM, state::kMd}) {
    a(state::kO, m) = -kI * go;
    a(state::kE, m) = -kI * ge;
    a(state::kOd, m) = kI * std::conj(go);
    a(state::kEd, m) = kI * std::conj(ge);
  }
  a(state::kM, state::kO) = -kI * std::conj(go);
  a(state::kM, state::kE) = -kI * std::conj(ge);
  a(state::kM, state::kOd) = -kI * go;
  a(state::kM, state::kEd) = -kI * ge;
  a(state::kMd, state::kO) = kI * std::conj(go);
  a(state::kMd, state::kE) = kI * std::conj(ge);
  a(state::kMd, state::kOd) = kI * go;
  a(state::kMd, state::kEd) = kI * ge;
  return a;
}

SidebandMatrixSet build_drift_fourier(const ValidatedParams& p, const SteadyAmplitudes& amps) {
  const cplx go = amps.g_eff_o;
  const cplx ge = amps.g_eff_e;
  SidebandMatrixSet s;
  s.omega_m = p->omega_m;
  s.kappa_m = p->kappa_m;
  s.a_d = build_drift_diagonal(p);

  s.q_am << -kI * go, -kI * go, -kI * ge, -kI * ge;
  s.q_mc << -kI * go, -kI * ge, kI * go, kI * ge;
  s.q_cm = s.q_am.conjugate();
  s.q_ma = -s.q_mc.conjugate();

  // A_- couples (a, m) and (m, a^dag); A_+ couples (a^dag, m) and (m, a).
  s.a_minus = Mat6::Zero();
  s.a_minus.block<2, 2>(0, 4) = s.q_am;
  s.a_minus.block<2, 2>(4, 2) = s.q_mc;
  s.a_plus = Mat6::Zero();
  s.a_plus.block<2, 2>(2, 4) = s.q_cm;
  s.a_plus.block<2, 2>(4, 0) = s.q_ma;
  return s;
}

Vec6 build_drive_vector(const ValidatedParams& p, const SteadyAmplitudes& amps) {
  const double power = p->g_o * std::norm(amps.alpha_o) + p->g_e * std::norm(amps.alpha_e);
  Vec6 v = Vec6::Zero();
  v(state::kM) = -kI * power;
  v(state::kMd) = kI * power;
  return v;
}

}  // namespace xduct
