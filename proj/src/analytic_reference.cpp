#include "xduct/analytic_reference.hpp"

#include <cmath>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

void require_case(const IdealCase& c) {
  if (!(c.kappa > 0.0) || !(c.omega_m > 0.0)) {
    throw ValidationError("ideal case needs kappa > 0 and omega_m > 0");
  }
}

}  // namespace

double sideband_ratio(const IdealCase& c) {
  require_case(c);
  return c.kappa / (4.0 * c.omega_m);
}

double amplified_efficiency(const IdealCase& c) {
  const double r = sideband_ratio(c);
  return std::sqrt(1.0 + r * r);
}

ConstSymmetric const_symmetric(const IdealCase& c, cplx g_eff) {
  if (c.protocol != IdealProtocol::Constant) {
    throw ValidationError("const_symmetric needs the constant protocol");
  }
  const double r = sideband_ratio(c);
  const cplx phase = g_eff == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : g_eff / std::conj(g_eff);
  ConstSymmetric out;
  out.t_oe = cplx{-1.0, -r};
  out.t_oo = cplx{0.0, -r};
  out.t_oe_conj = cplx{0.0, -r} * phase;
  out.t_oo_conj = out.t_oe_conj;
  out.eta = amplified_efficiency(c);
  return out;
}

PdIdeal pd_ideal(const IdealCase& c) {
  PdIdeal out;
  switch (c.protocol) {
    case IdealProtocol::ParametricN1:
      require_case(c);
      out.eta = 1.0;
      break;
    case IdealProtocol::ParametricN2: {
      const double r = sideband_ratio(c);
      out.eta = amplified_efficiency(c);
      out.t_oo = r;
      out.v_oo_conj = r;
      out.v_oe_conj = r;
      break;
    }
    case IdealProtocol::Constant:
      throw ValidationError("pd_ideal needs a parametric protocol");
  }
  return out;
}

Extrapolation extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ValidationError("extrapolation needs >= 2 matching points");
  std::vector<double> p(y);
  double previous = p[n - 1];
  // After pass m, p[i] is the degree-m interpolant through x[i..i+m], evaluated at 0.
  // The error estimate compares against the next-lower degree through the last points.
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    }
    if (m + 2 == n) previous = p[1];
  }
  return {p[0], std::abs(p[0] - previous)};
}

}  // namespace xduct
