#pragma once

#include <vector>

#include "xduct/params.hpp"

namespace xduct {

enum class IdealProtocol { Constant, ParametricN1, ParametricN2 };

/// Symmetric, lossless EM cavities with Delta = omega_m and kappa_m -> 0.
struct IdealCase {
  double kappa = 0.0;    // rad/s
  double omega_m = 0.0;  // rad/s
  IdealProtocol protocol = IdealProtocol::Constant;
};

/// kappa / (4 omega_m).
double sideband_ratio(const IdealCase& c);

/// sqrt(1 + kappa^2 / 16 omega_m^2), shared by the constant and the N = 2 results.
double amplified_efficiency(const IdealCase& c);

struct ConstSymmetric {
  cplx t_oe;
  cplx t_oo;
  cplx t_oe_conj;
  cplx t_oo_conj;
  double eta = 0.0;
};

/// Transfer elements at omega = omega_m. `g_eff` only sets the phase of the
/// conjugate elements.
ConstSymmetric const_symmetric(const IdealCase& c, cplx g_eff = {1.0, 0.0});

struct PdIdeal {
  double eta = 0.0;
  double t_oe_conj = 0.0;  // magnitudes
  double t_oo = 0.0;
  double t_oo_conj = 0.0;
  double v_oo_conj = 0.0;  // second lower sideband, o.ex' and e.ex' inputs
  double v_oe_conj = 0.0;
};

PdIdeal pd_ideal(const IdealCase& c);

struct Extrapolation {
  double value = 0.0;
  double error_estimate = 0.0;  // difference of the two highest-order estimates
};

/// Polynomial (Neville) extrapolation of y(x) to x = 0. Needs at least two points.
Extrapolation extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace xduct
