#pragma once

#include <functional>
#include <vector>

namespace xduct {

using ScalarFn = std::function<double(double)>;

/// First strict sign change of `diff` on `grid`, located by linear
/// interpolation. When `refine` is given it is evaluated on the bracketing
/// interval and bisected until the bracket is below `rel_tol` relative.
/// Throws NoCrossingError when the sign never changes (all-zero included).
double find_crossing(const std::vector<double>& grid, const std::vector<double>& diff,
                     const ScalarFn& refine = {}, double rel_tol = 1e-4);

/// Crossing of two series, i.e. of a - b.
double find_crossing(const std::vector<double>& grid, const std::vector<double>& a,
                     const std::vector<double>& b, const ScalarFn& refine = {},
                     double rel_tol = 1e-4);

/// Illinois (modified regula falsi) root of f on [lo, hi] until |f| <= f_tol.
/// The bracket may be given in either order. Throws NoCrossingError when f
/// has the same sign at both ends.
double solve_bracketed(const ScalarFn& f, double lo, double hi, double f_tol,
                       int max_iter = 200);

}  // namespace xduct
