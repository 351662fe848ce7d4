#pragma once

#include <array>

#include "xduct/matrix_builder.hpp"

namespace xduct {

/// A 6x6 matrix that is block diagonal with 2x2 blocks on the index pairs
/// {a_o, a_e}, {a_o^dag, a_e^dag}, {a_m, a_m^dag}. Blocks are numbered 1..3.
struct BlockDiag {
  std::array<Mat2, 3> blocks{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

  Mat2& operator[](int i) { return blocks[static_cast<std::size_t>(i)]; }
  const Mat2& operator[](int i) const { return blocks[static_cast<std::size_t>(i)]; }

  Mat6 dense() const;
  /// Copies the diagonal blocks and discards everything else.
  static BlockDiag from_dense(const Mat6& m);
};

/// Largest entry outside the three diagonal 2x2 blocks.
double off_block_max(const Mat6& m);

/// Closed-form inverse of a 2x2 matrix. Returns false when the matrix is
/// singular to working precision. `rcond` receives the reciprocal 1-norm
/// condition number.
bool invert2(const Mat2& m, Mat2& inverse, double& rcond);

double norm1(const Mat2& m);

}  // namespace xduct
