#include "su11/verification.hpp"

#include <algorithm>
#include <cmath>

#include "su11/eigen.hpp"
#include "su11/error.hpp"
#include "su11/extended.hpp"

namespace su11 {

OperatorBundle build_bundle(const SwansonParams& p, double z, const RealizationMatrices& r,
                            const BundleOptions& options) {
  const std::size_t t = options.trusted;
  if (t < 2 || t >= r.dim || t > r.trusted)
    throw Error(ErrorKind::TruncationTooSmall, "trusted block T=" + std::to_string(t) + " must satisfy 2 <= T <= " +
                                                   std::to_string(r.trusted) + " < N=" + std::to_string(r.dim));
  OperatorBundle b;
  b.solution = solve_metric(p, z);
  b.dim = r.dim;
  b.trusted = t;

  const AlgebraElement& a = b.solution.rho_exponent;
  b.H = materialize(p.hamiltonian(), r);
  b.O = materialize(b.solution.observable, r);
  b.h_direct = materialize(b.solution.h, r);
  b.rho = exp_element(a, r);
  b.rho_inv = exp_element(a.scaled(-1.0), r);
  b.zeta_plus = exp_element(a.scaled(2.0), r);

  const auto eig = symmetric_eigs(b.h_direct);
  const std::size_t m = std::min(options.spectrum_count, t / 2);
  b.spectrum_h.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(m));

  // Entries of rho and rho^-1 that meet in the trusted block set the working precision.
  const std::size_t wide = std::min(r.dim, t + r.shift);
  double big_rho = 0.0, big_inv = 0.0;
  for (std::size_t i = 0; i < wide; ++i)
    for (std::size_t j = 0; j < r.dim; ++j) {
      if (i < t) big_rho = std::max(big_rho, std::abs(b.rho(i, j)));
      big_inv = std::max(big_inv, std::abs(b.rho_inv(i, j)));
    }
  const double range = big_rho * big_inv;
  const int digits = extended::choose_digits(range);
  const auto block = extended::conjugate_block(a, p.hamiltonian(), b.solution.h, r, t,
                                               options.certify_eigenvectors ? b.spectrum_h : std::vector<double>{},
                                               digits);
  b.h_conj = block.conjugated;

  auto& res = b.residuals;
  res["conj_digits"] = digits;
  res["r_herm"] = relative_block_residual(b.h_conj, b.h_conj.transpose(), t);
  res["r_eq10"] = relative_block_residual(b.h_conj, b.h_direct.block(t, t), t);
  // H, h and O are banded with bandwidth `shift`, so their products with rho
  // agree with the untruncated ones on the T block once restricted to T + shift.
  const Matrix rho_w = b.rho.block(wide, wide);
  const Matrix H_w = b.H.block(wide, wide);
  const Matrix O_w = b.O.block(wide, wide);
  res["r_intertwine"] = relative_block_residual(matmul(b.h_direct.block(wide, wide), rho_w), matmul(rho_w, H_w), t);
  res["r_quasi"] = spectral_norm(block.quasi_defect, t) / spectral_norm(block.quasi_reference, t);
  res["r_commute"] = relative_block_residual(matmul(rho_w, O_w), matmul(O_w, rho_w), t);
  res["r_inverse"] = spectral_norm(block.identity_check - Matrix::identity(t), t);
  res["r_zeta"] = block.zeta_defect;
  {
    // exp(2A) = exp(p K+) exp(q K0) exp(p K-) needs cosh 2t - 2 eps sinh(2t)/(2t) > 0; at
    // zero the Fock-basis matrix elements of zeta diverge.
    const double e2 = 2.0 * b.solution.epsilon;
    const double t2 = 2.0 * b.solution.theta;
    res["zeta_normal_pivot"] = std::cosh(t2) - e2 * sinhc(t2);
  }
  res["zeta_chol_log10"] = block.zeta_cholesky_log10;
  res["r_eigvec"] = block.eigvec_residual;
  return b;
}

std::vector<double> spectrum_prediction(const SwansonParams& p, double k, std::size_t count) {
  if (!(p.gap_squared() > 0.0)) throw Error(ErrorKind::InvalidParams, "omega^2 - 4 alpha beta > 0 violated");
  const double quantum = 2.0 * std::sqrt(p.gap_squared());
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = quantum * (static_cast<double>(n) + k);
  return out;
}

std::vector<double> spectrum_prediction(const SwansonParams& p, const std::vector<double>& weights, std::size_t count) {
  std::vector<double> all;
  for (double k : weights) {
    const auto s = spectrum_prediction(p, k, count);
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min(all.size(), count));
  return all;
}

}  // namespace su11
