#pragma once

// z-parameterized family of metric operators for H = 2w K0 + 2a K- + 2b K+.
//
// For each admissible z the Hermiticity conditions fix eps(z), eta = z eps / 2,
// the exponent A = eps O with O = 2K0 + z(K+ + K-), and the equivalent Hermitian
// Hamiltonian h = rho H rho^-1, rho = exp(A), zeta_plus = rho^2.

#include <optional>
#include <vector>

#include "su11/algebra.hpp"

namespace su11 {

struct SwansonParams {
  double omega = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// omega^2 - 4 alpha beta; the square of the effective frequency.
  double gap_squared() const { return omega * omega - 4.0 * alpha * beta; }
  /// The Hamiltonian as an algebra element, (2w, 2a, 2b).
  AlgebraElement hamiltonian() const { return {2.0 * omega, 2.0 * alpha, 2.0 * beta}; }
};

/// Throws InvalidParams naming the violated constraint (omega > 0, alpha != beta,
/// omega^2 - 4 alpha beta > 0, finiteness).
const SwansonParams& validate_params(const SwansonParams& p);

struct ZInterval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool contains(double z) const {
    return (lo_closed ? z >= lo : z > lo) && (hi_closed ? z <= hi : z < hi);
  }
};

/// Admissible z in [-1, 1]: where the arctanh argument (a-b) sqrt(1-z^2)/(a+b-wz)
/// has modulus below one. The complement is the closed interval between the roots
/// of (w^2 + (a-b)^2) z^2 - 2w(a+b) z + 4ab.
std::vector<ZInterval> z_domain(const SwansonParams& p);

/// The excluded closed interval [z_lo, z_hi] (may lie partly outside [-1, 1]).
std::pair<double, double> z_excluded(const SwansonParams& p);

bool z_admissible(const SwansonParams& p, double z);

/// eps(z) = arctanh(u) / (2 sqrt(1 - z^2)), u = (a-b) sqrt(1-z^2) / (a+b-wz),
/// with the analytic limit (a-b)/(2(a+b-zw)) at |z| = 1. Throws ZOutOfDomain.
double solve_epsilon(const SwansonParams& p, double z);

/// Residual of tanh(2 theta)/theta = (a-b)/((a+b) eps - 2 w eta), written in the
/// division-free form tanh(2 theta) ((a+b) eps - 2 w eta) - theta (a-b).
double hermiticity_residual(const SwansonParams& p, double epsilon, double eta);

struct Uvw {
  cplx u, v, w;
};

/// Coefficients of rho H rho^-1 = 2U K0 + 2V K- + 2W K+ for rho = exp(2 eps K0 +
/// 2 eta K- + 2 conj(eta) K+). Throws TrigRegime.
Uvw transformed_coeffs(const SwansonParams& p, double epsilon, cplx eta);

/// Largest |z| at which mu and nu are still evaluated.
inline constexpr double kMuNuEndpointGuard = 1.0 - 1e-9;

struct MuNu {
  double mu;
  double nu;
};

/// Throws ZOutOfDomain outside the admissible set or for |z| >= 1 - 1e-9.
MuNu mu_nu(const SwansonParams& p, double z);

/// Hermitian counterpart h. Uses the mu/nu closed form for |z| < 1 - 1e-9 and the
/// adjoint action of rho on H at the endpoints.
AlgebraElement h_element(const SwansonParams& p, double z);

/// Exponent A = eps (2, z, z) of rho = exp(A).
AlgebraElement rho_exponent(const SwansonParams& p, double z);

/// Base Lambda of rho = Lambda^{O / (4 sqrt(1 - z^2))}; empty at |z| = 1 where it is 0/0.
std::optional<double> lambda_base(const SwansonParams& p, double z);

/// O = 2K0 + z(K+ + K-). Throws ZOutOfDomain for |z| > 1.
AlgebraElement observable_O(double z);

struct MetricSolution {
  SwansonParams params;
  double z = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  double theta = 0.0;
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<double> lambda;
  /// Coefficients of rho H rho^-1; real to rounding for the solved epsilon.
  cplx u, v, w;
  AlgebraElement rho_exponent;
  AlgebraElement h;
  AlgebraElement observable;
};

/// Everything above for one (params, z). mu, nu and lambda are left empty where
/// their closed forms are indeterminate.
MetricSolution solve_metric(const SwansonParams& p, double z);

}  // namespace su11
