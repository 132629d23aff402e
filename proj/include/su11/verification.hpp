#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "su11/matrix.hpp"
#include "su11/metric.hpp"
#include "su11/realization.hpp"

namespace su11 {

struct BundleOptions {
  std::size_t trusted = 50;
  /// Number of lowest eigenvalues of h to report; clipped to trusted / 2.
  std::size_t spectrum_count = 5;
  /// Reconstruct eigenvectors of H as rho^-1 psi and record their residual.
  bool certify_eigenvectors = true;
};

struct OperatorBundle {
  MetricSolution solution;
  std::size_t dim = 0;
  std::size_t trusted = 0;
  Matrix H;
  Matrix rho;
  Matrix rho_inv;
  Matrix zeta_plus;
  /// rho H rho^-1 on the leading T x T block, formed in the working precision
  /// recorded as residuals["conj_digits"].
  Matrix h_conj;
  Matrix h_direct;
  Matrix O;
  /// r_herm, r_eq10, r_intertwine, r_quasi, r_commute, r_inverse, r_zeta and
  /// r_eigvec, plus conj_digits (working precision of the block products),
  /// zeta_chol_log10 and zeta_normal_pivot. Ordered map so iteration order is stable.
  std::map<std::string, double> residuals;
  std::vector<double> spectrum_h;
};

/// Materializes H, rho, rho^-1, zeta_plus, h (by conjugation and from the closed
/// form) and O, and evaluates residuals on the leading trusted block.
/// Throws TruncationTooSmall when the trusted block does not fit in the
/// realization's own trusted region.
OperatorBundle build_bundle(const SwansonParams& p, double z, const RealizationMatrices& r,
                            const BundleOptions& options = {});

/// 2 sqrt(w^2 - 4ab) (n + k), n = 0 .. count-1.
std::vector<double> spectrum_prediction(const SwansonParams& p, double k, std::size_t count);

/// The merged, ascending lowest `count` levels over several lowest weights.
std::vector<double> spectrum_prediction(const SwansonParams& p, const std::vector<double>& weights, std::size_t count);

}  // namespace su11
