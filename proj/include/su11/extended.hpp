#pragma once

// Trusted-block conjugation rho X rho^-1 in a working precision chosen from the
// dynamic range of rho and rho^-1. Near the edge of the admissible z range the
// leading rows of rho^-1 reach 1e80 and beyond, and double-precision products
// lose every digit to cancellation even though the exact block is O(1).

#include <cstddef>
#include <vector>

#include "su11/algebra.hpp"
#include "su11/matrix.hpp"
#include "su11/realization.hpp"

namespace su11::extended {

/// Supported working precisions, in decimal digits. 16 means plain double.
inline constexpr int kTiers[] = {16, 50, 100, 200, 400};

/// Plain double below a range of 1e3, otherwise the smallest tier with at least log10(range) + 25 digits, where range is the
/// product of the largest entries in the rows that enter the block. Throws
/// NoConvergence when even 400 digits would not do.
int choose_digits(double range);

struct BlockConjugation {
  int digits = 16;
  /// (rho X rho^-1) restricted to the leading T x T block.
  Matrix conjugated;
  /// (rho rho^-1) on the same block.
  Matrix identity_check;
  /// max_j ||(H - lambda_j) rho^-1 psi_j||_T / ||rho^-1 psi_j||_T over the requested
  /// eigenpairs of h; 0 when none are requested.
  double eigvec_residual = 0.0;
  /// log10 of the smallest Cholesky pivot of D^-1/2 exp(2A)_T D^-1/2, D its diagonal;
  /// -inf when the factorization breaks down. Meaningful down to about -(digits - 10).
  double zeta_cholesky_log10 = 0.0;
  /// ||D^-1/2 (exp(2A) - rho rho)_T D^-1/2||_F / ||D^-1/2 exp(2A)_T D^-1/2||_F.
  double zeta_defect = 0.0;
  /// (exp(2A) X - X^T exp(2A)) and exp(2A) X on the block.
  Matrix quasi_defect;
  Matrix quasi_reference;
  /// The eigenvalues after refinement in the working precision.
  std::vector<double> refined_eigenvalues;
};

/// `exponent` is the metric exponent A (rho = exp A); `x` the real element to
/// conjugate (usually H); `h` the real element whose eigenvectors are certified
/// starting from the approximate eigenvalues `lambdas`.
BlockConjugation conjugate_block(const AlgebraElement& exponent, const AlgebraElement& x, const AlgebraElement& h,
                                 const RealizationMatrices& r, std::size_t t, const std::vector<double>& lambdas,
                                 int digits);

}  // namespace su11::extended
