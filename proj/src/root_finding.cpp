#include "xduct/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "xduct/errors.hpp"

namespace xduct {

namespace {

double interpolate_zero(double x0, double f0, double x1, double f1) {
  return x0 - f0 * (x1 - x0) / (f1 - f0);
}

double bisect(const ScalarFn& f, double lo, double hi, double rel_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    // Fresh solves disagree with the grid values; keep the grid estimate.
    return interpolate_zero(lo, flo, hi, fhi);
  }
  while (hi - lo > rel_tol * std::abs(0.5 * (lo + hi))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return interpolate_zero(lo, flo, hi, fhi);
}

}  // namespace

double find_crossing(const std::vector<double>& grid, const std::vector<double>& diff,
                     const ScalarFn& refine, double rel_tol) {
  if (grid.size() != diff.size()) throw ValidationError("grid and series lengths differ");
  std::size_t last = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (diff[i] == 0.0 || std::isnan(diff[i])) continue;
    if (last < grid.size() && (diff[i] < 0.0) != (diff[last] < 0.0)) {
      if (i != last + 1) return grid[last + 1];  // exact zero on the grid
      if (refine) return bisect(refine, grid[last], grid[i], rel_tol);
      return interpolate_zero(grid[last], diff[last], grid[i], diff[i]);
    }
    last = i;
  }
  throw NoCrossingError("no crossing in range");
}

double find_crossing(const std::vector<double>& grid, const std::vector<double>& a,
                     const std::vector<double>& b, const ScalarFn& refine, double rel_tol) {
  if (a.size() != b.size()) throw ValidationError("series lengths differ");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return find_crossing(grid, diff, refine, rel_tol);
}

double solve_bracketed(const ScalarFn& f, double lo, double hi, double f_tol, int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) <= f_tol) return lo;
  if (std::abs(fhi) <= f_tol) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw NoCrossingError("no sign change in bracket");
  int side = 0;
  for (int it = 0; it < max_iter; ++it) {
    double x = interpolate_zero(lo, flo, hi, fhi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (std::abs(fx) <= f_tol) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) {
      throw SolverError("bracket collapsed before reaching the tolerance");
    }
  }
  throw SolverError("root finder did not converge");
}

}  // namespace xduct
