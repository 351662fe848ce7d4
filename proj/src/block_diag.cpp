#include "xduct/block_diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xduct {

Mat6 BlockDiag::dense() const {
  Mat6 out = Mat6::Zero();
  for (int i = 0; i < 3; ++i) out.block<2, 2>(2 * i, 2 * i) = (*this)[i];
  return out;
}

BlockDiag BlockDiag::from_dense(const Mat6& m) {
  BlockDiag out;
  for (int i = 0; i < 3; ++i) out[i] = m.block<2, 2>(2 * i, 2 * i);
  return out;
}

double off_block_max(const Mat6& m) {
  double worst = 0.0;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      if (r / 2 != c / 2) worst = std::max(worst, std::abs(m(r, c)));
    }
  }
  return worst;
}

double norm1(const Mat2& m) {
  return std::max(std::abs(m(0, 0)) + std::abs(m(1, 0)), std::abs(m(0, 1)) + std::abs(m(1, 1)));
}

bool invert2(const Mat2& m, Mat2& inverse, double& rcond) {
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double scale = norm1(m);
  if (det == cplx{0.0, 0.0} || !std::isfinite(std::abs(det)) || scale == 0.0) {
    rcond = 0.0;
    return false;
  }
  inverse << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  inverse /= det;
  rcond = 1.0 / (scale * norm1(inverse));
  return std::isfinite(rcond) && rcond > std::numeric_limits<double>::epsilon();
}

}  // namespace xduct
