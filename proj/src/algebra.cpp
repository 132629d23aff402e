#include "su11/algebra.hpp"

#include <cmath>
#include <sstream>

#include "su11/error.hpp"

namespace su11 {

namespace {

constexpr double kSeriesCutoff = 1e-4;
constexpr double kPivotFloor = 1e-14;

// cosh(t) + a sinh(t)/t with gap = a^2 - t^2. For a < 0 the two terms cancel down to
// e^-t; writing it as e^-t - (|a| - t) sinh(t)/t keeps the result accurate.
double cosh_plus_sinhc(double t, double a, double gap) {
  if (a >= 0.0) return std::cosh(t) + a * sinhc(t);
  return std::exp(-t) - gap / (t - a) * sinhc(t);
}

}  // namespace

double sinhc(double t) {
  if (std::abs(t) < kSeriesCutoff) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 * (1.0 + t2 / 20.0);
  }
  return std::sinh(t) / t;
}

double coshm1c(double t) {
  if (std::abs(t) < kSeriesCutoff) {
    const double t2 = t * t;
    return 0.5 + t2 / 24.0 * (1.0 + t2 / 30.0);
  }
  return (std::cosh(t) - 1.0) / (t * t);
}

bool AlgebraElement::is_hermitian(double tol) const {
  return std::abs(c0.imag()) <= tol && std::abs(cp - std::conj(cm)) <= tol;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  // [K0, K-] = -K-, [K0, K+] = K+, [K+, K-] = -2 K0
  AlgebraElement z;
  z.cm = -(x.c0 * y.cm - x.cm * y.c0);
  z.cp = x.c0 * y.cp - x.cp * y.c0;
  z.c0 = -2.0 * (x.cp * y.cm - x.cm * y.cp);
  return z;
}

double spectral_norm(const DefiningMatrix& m) {
  // sqrt of the largest eigenvalue of M^H M.
  const double a = std::norm(m.m11) + std::norm(m.m21);
  const double d = std::norm(m.m12) + std::norm(m.m22);
  const cplx b = std::conj(m.m11) * m.m12 + std::conj(m.m21) * m.m22;
  const double half_tr = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return std::sqrt(half_tr + disc);
}

DefiningMatrix defining_rep(const AlgebraElement& x) {
  return {0.5 * x.c0, x.cp, -x.cm, -0.5 * x.c0};
}

AlgebraElement from_defining(const DefiningMatrix& m) {
  return {m.m11 - m.m22, -m.m21, m.m12};
}

DefiningMatrix exp_defining(const AlgebraElement& x) {
  const DefiningMatrix s = defining_rep(x);
  const cplx theta2 = -s.det();
  cplx ch, sh_over;
  const cplx gap = -s.m12 * s.m21;
  if (s.m11.imag() == 0.0 && gap.imag() == 0.0 && theta2.imag() == 0.0 && theta2.real() >= 0.0) {
    const double t = std::sqrt(theta2.real());
    const double a = s.m11.real();
    const double sh = sinhc(t);
    return {cosh_plus_sinhc(t, a, gap.real()), sh * s.m12, sh * s.m21, cosh_plus_sinhc(t, -a, gap.real())};
  }
  // theta^2 is real for every element used here; fall back to complex sqrt otherwise.
  if (std::abs(theta2.imag()) <= 1e-300 + 1e-15 * std::abs(theta2)) {
    const double t2 = theta2.real();
    if (t2 >= 0.0) {
      const double t = std::sqrt(t2);
      ch = std::cosh(t);
      sh_over = sinhc(t);
    } else {
      const double phi = std::sqrt(-t2);
      ch = std::cos(phi);
      sh_over = (phi < kSeriesCutoff) ? 1.0 - phi * phi / 6.0 : std::sin(phi) / phi;
    }
  } else {
    const cplx t = std::sqrt(theta2);
    ch = std::cosh(t);
    sh_over = std::sinh(t) / t;
  }
  return {ch + sh_over * s.m11, sh_over * s.m12, sh_over * s.m21, ch + sh_over * s.m22};
}

DefiningMatrix Factorization::reconstruct() const {
  const DefiningMatrix ep{1.0, p, 0.0, 1.0};
  const DefiningMatrix eq{std::exp(0.5 * q), 0.0, 0.0, std::exp(-0.5 * q)};
  const DefiningMatrix er{1.0, 0.0, -r, 1.0};
  return ordering == Ordering::Normal ? ep * eq * er : er * eq * ep;
}

Factorization gauss_decompose(const DefiningMatrix& m, Ordering ordering) {
  Factorization f;
  f.ordering = ordering;
  if (ordering == Ordering::Normal) {
    // [[e^{q/2} - p r e^{-q/2}, p e^{-q/2}], [-r e^{-q/2}, e^{-q/2}]]
    if (std::abs(m.m22) < kPivotFloor)
      throw Error(ErrorKind::DecompositionSingular, "normal ordering needs m22 != 0");
    f.q = -2.0 * std::log(m.m22);
    f.p = m.m12 / m.m22;
    f.r = -m.m21 / m.m22;
  } else {
    // [[e^{q/2}, e^{q/2} p], [-r e^{q/2}, e^{-q/2} - r p e^{q/2}]]
    if (std::abs(m.m11) < kPivotFloor)
      throw Error(ErrorKind::DecompositionSingular, "antinormal ordering needs m11 != 0");
    f.q = 2.0 * std::log(m.m11);
    f.p = m.m12 / m.m11;
    f.r = -m.m21 / m.m11;
  }
  return f;
}

namespace {

struct TrigParts {
  double ch;       // cosh(theta)
  double sh_over;  // sinh(theta)/theta
  double minus;    // cosh(theta) - eps sinh(theta)/theta
  double plus;     // cosh(theta) + eps sinh(theta)/theta
};

TrigParts trig_parts(double epsilon, cplx eta) {
  const double theta2 = epsilon * epsilon - 4.0 * std::norm(eta);
  if (theta2 < 0.0) {
    std::ostringstream msg;
    msg << "theta^2 = eps^2 - 4|eta|^2 = " << theta2 << " < 0";
    throw Error(ErrorKind::TrigRegime, msg.str());
  }
  const double theta = std::sqrt(theta2);
  const double gap = 4.0 * std::norm(eta);
  return {std::cosh(theta), sinhc(theta), cosh_plus_sinhc(theta, -epsilon, gap), cosh_plus_sinhc(theta, epsilon, gap)};
}

}  // namespace

Factorization normal_factorization(double epsilon, cplx eta) {
  const auto [ch, sh, minus, plus] = trig_parts(epsilon, eta);
  if (std::abs(minus) < kPivotFloor)
    throw Error(ErrorKind::DecompositionSingular, "cosh(theta) - eps sinh(theta)/theta vanishes");
  Factorization f;
  f.ordering = Ordering::Normal;
  f.q = -2.0 * std::log(cplx(minus));
  f.r = 2.0 * eta * sh / minus;
  f.p = std::conj(f.r);
  return f;
}

Disentangled disentangle_closed_form(double epsilon, cplx eta) {
  const auto [ch, sh, minus, plus] = trig_parts(epsilon, eta);
  if (std::abs(minus) < kPivotFloor || std::abs(plus) < kPivotFloor)
    throw Error(ErrorKind::DecompositionSingular, "cosh(theta) -+ eps sinh(theta)/theta vanishes");
  Disentangled d;
  d.normal = normal_factorization(epsilon, eta);
  d.antinormal.ordering = Ordering::Antinormal;
  d.antinormal.q = 2.0 * std::log(cplx(plus));
  d.antinormal.r = 2.0 * eta * sh / plus;
  d.antinormal.p = std::conj(d.antinormal.r);
  return d;
}

AdjointMatrix adjoint_matrix(double epsilon, cplx eta) {
  const auto [ch, sh, minus, plus] = trig_parts(epsilon, eta);
  const cplx etac = std::conj(eta);
  const double sh2 = sh * sh;
  AdjointMatrix m{};
  // rho K0 rho^-1
  m[0][0] = 1.0 - 8.0 * std::norm(eta) * sh2;
  m[1][0] = 2.0 * eta * sh * minus;
  m[2][0] = -2.0 * etac * sh * plus;
  // rho K- rho^-1
  m[0][1] = -4.0 * etac * sh * minus;
  m[1][1] = minus * minus;
  m[2][1] = 4.0 * etac * etac * sh2;
  // rho K+ rho^-1
  m[0][2] = 4.0 * eta * sh * plus;
  m[1][2] = 4.0 * eta * eta * sh2;
  m[2][2] = plus * plus;
  return m;
}

AlgebraElement apply(const AdjointMatrix& m, const AlgebraElement& x) {
  const std::array<cplx, 3> v{x.c0, x.cm, x.cp};
  std::array<cplx, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return {out[0], out[1], out[2]};
}

AlgebraElement conjugate(const AlgebraElement& a_exponent, const AlgebraElement& x) {
  const double tol = 1e-14 * (1.0 + std::abs(a_exponent.c0) + std::abs(a_exponent.cm));
  if (!a_exponent.is_hermitian(tol))
    throw Error(ErrorKind::InvalidParams, "exponent must have real K0 part and K+ = conj(K-) coefficient");
  const double epsilon = 0.5 * a_exponent.c0.real();
  const cplx eta = 0.5 * a_exponent.cm;
  return apply(adjoint_matrix(epsilon, eta), x);
}

AlgebraElement conjugate_defining(const AlgebraElement& a_exponent, const AlgebraElement& x) {
  const DefiningMatrix g = exp_defining(a_exponent);
  const DefiningMatrix g_inv = exp_defining(a_exponent.scaled(-1.0));
  return from_defining(g * defining_rep(x) * g_inv);
}

}  // namespace su11
