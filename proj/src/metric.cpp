#include "su11/metric.hpp"

#include <cmath>
#include <sstream>

#include "su11/error.hpp"

namespace su11 {

namespace {

std::string describe(const SwansonParams& p, double z) {
  std::ostringstream os;
  os.precision(12);
  os << "(omega=" << p.omega << ", alpha=" << p.alpha << ", beta=" << p.beta << ", z=" << z << ")";
  return os.str();
}

// arctanh(u)/u, finite at u = 0.
double atanhc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 + u2 / 3.0 + u2 * u2 / 5.0;
  }
  return std::atanh(u) / u;
}

// (a+b-wz)^2 - (a-b)^2 (1-z^2); admissible iff positive.
double domain_form(const SwansonParams& p, double z) {
  const double den = p.alpha + p.beta - p.omega * z;
  const double diff = p.alpha - p.beta;
  return den * den - diff * diff * (1.0 - z * z);
}

}  // namespace

const SwansonParams& validate_params(const SwansonParams& p) {
  if (!std::isfinite(p.omega) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
    throw Error(ErrorKind::InvalidParams, "parameters must be finite");
  if (!(p.omega > 0.0)) throw Error(ErrorKind::InvalidParams, "omega > 0 violated");
  if (p.alpha == p.beta) throw Error(ErrorKind::InvalidParams, "alpha != beta violated (alpha = beta)");
  if (!(p.gap_squared() > 0.0))
    throw Error(ErrorKind::InvalidParams, "omega^2 - 4 alpha beta > 0 violated (omega^2 - 4 alpha beta <= 0)");
  return p;
}

std::pair<double, double> z_excluded(const SwansonParams& p) {
  const double diff = p.alpha - p.beta;
  const double a = p.omega * p.omega + diff * diff;
  const double mid = p.omega * (p.alpha + p.beta) / a;
  const double half = std::abs(diff) * std::sqrt(std::max(0.0, p.gap_squared())) / a;
  return {mid - half, mid + half};
}

std::vector<ZInterval> z_domain(const SwansonParams& p) {
  validate_params(p);
  const auto [lo, hi] = z_excluded(p);
  std::vector<ZInterval> out;
  if (lo > -1.0) out.push_back({-1.0, std::min(lo, 1.0), true, lo > 1.0});
  if (hi < 1.0) out.push_back({std::max(hi, -1.0), 1.0, hi < -1.0, true});
  return out;
}

bool z_admissible(const SwansonParams& p, double z) {
  if (!(std::abs(z) <= 1.0)) return false;
  return domain_form(p, z) > 0.0;
}

double solve_epsilon(const SwansonParams& p, double z) {
  validate_params(p);
  if (!z_admissible(p, z)) throw Error(ErrorKind::ZOutOfDomain, "z outside admissible set " + describe(p, z));
  const double den = p.alpha + p.beta - p.omega * z;
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double u = (p.alpha - p.beta) * s / den;
  // eps = arctanh(u) / (2 s) = (a-b)/(2 den) * arctanh(u)/u
  return (p.alpha - p.beta) / (2.0 * den) * atanhc(u);
}

double hermiticity_residual(const SwansonParams& p, double epsilon, double eta) {
  const double theta = std::sqrt(std::max(0.0, epsilon * epsilon - 4.0 * eta * eta));
  return std::tanh(2.0 * theta) * ((p.alpha + p.beta) * epsilon - 2.0 * p.omega * eta) -
         theta * (p.alpha - p.beta);
}

Uvw transformed_coeffs(const SwansonParams& p, double epsilon, cplx eta) {
  const double theta2 = epsilon * epsilon - 4.0 * std::norm(eta);
  if (theta2 < 0.0) throw Error(ErrorKind::TrigRegime, "theta^2 < 0 in transformed_coeffs");
  const double theta = std::sqrt(theta2);
  const double sh = sinhc(theta);
  const double ch = std::cosh(theta);
  const double minus = ch - epsilon * sh;
  const double plus = ch + epsilon * sh;
  const cplx etac = std::conj(eta);
  const double w = p.omega, a = p.alpha, b = p.beta;
  Uvw out;
  out.u = w * (1.0 - 8.0 * std::norm(eta) * sh * sh) - 4.0 * a * etac * sh * minus + 4.0 * b * eta * sh * plus;
  out.v = 2.0 * w * eta * sh * minus + a * minus * minus + 4.0 * b * eta * eta * sh * sh;
  out.w = -2.0 * w * etac * sh * plus + 4.0 * a * etac * etac * sh * sh + b * plus * plus;
  return out;
}

MuNu mu_nu(const SwansonParams& p, double z) {
  validate_params(p);
  if (!z_admissible(p, z)) throw Error(ErrorKind::ZOutOfDomain, "z outside admissible set " + describe(p, z));
  if (std::abs(z) >= kMuNuEndpointGuard)
    throw Error(ErrorKind::ZOutOfDomain, "mu, nu are indeterminate at |z| = 1 " + describe(p, z));
  const double den = p.alpha + p.beta - p.omega * z;
  // den * sqrt(1 - (a-b)^2 (1-z^2)/den^2) = sign(den) sqrt(domain_form)
  const double root = std::copysign(std::sqrt(domain_form(p, z)), den);
  const double base = p.omega - (p.alpha + p.beta) * z;
  return {(base - root) / ((1.0 + z) * p.omega), p.omega * (base + root) / (1.0 - z)};
}

AlgebraElement observable_O(double z) {
  if (!(std::abs(z) <= 1.0)) throw Error(ErrorKind::ZOutOfDomain, "observable O needs |z| <= 1");
  return {2.0, z, z};
}

AlgebraElement rho_exponent(const SwansonParams& p, double z) {
  return solve_epsilon(p, z) * observable_O(z);
}

std::optional<double> lambda_base(const SwansonParams& p, double z) {
  validate_params(p);
  if (!z_admissible(p, z)) throw Error(ErrorKind::ZOutOfDomain, "z outside admissible set " + describe(p, z));
  if (std::abs(z) >= 1.0) return std::nullopt;
  const double den = p.alpha + p.beta - p.omega * z;
  const double t = (p.alpha - p.beta) * std::sqrt(1.0 - z * z);
  return (den + t) / (den - t);
}

AlgebraElement h_element(const SwansonParams& p, double z) {
  if (std::abs(z) >= kMuNuEndpointGuard) return conjugate(rho_exponent(p, z), p.hamiltonian());
  const auto [mu, nu] = mu_nu(p, z);
  const double w = p.omega;
  const double off = (nu - mu * w * w) / (2.0 * w);
  return {(nu + mu * w * w) / w, off, off};
}

MetricSolution solve_metric(const SwansonParams& p, double z) {
  MetricSolution s;
  s.params = validate_params(p);
  s.z = z;
  s.epsilon = solve_epsilon(p, z);
  s.eta = 0.5 * z * s.epsilon;
  s.theta = std::abs(s.epsilon) * std::sqrt(std::max(0.0, 1.0 - z * z));
  if (std::abs(z) < kMuNuEndpointGuard) {
    const auto mn = mu_nu(p, z);
    s.mu = mn.mu;
    s.nu = mn.nu;
  }
  s.lambda = lambda_base(p, z);
  const Uvw c = transformed_coeffs(p, s.epsilon, s.eta);
  s.u = c.u;
  s.v = c.v;
  s.w = c.w;
  s.observable = observable_O(z);
  s.rho_exponent = s.epsilon * s.observable;
  s.h = h_element(p, z);
  return s;
}

}  // namespace su11
