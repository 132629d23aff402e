#pragma once

// Representation-independent su(1,1) / sl(2) layer.
//
// Elements are coefficient triples over the basis (K0, K-, K+) obeying
//   [K0, K+-] = +-K+-,   [K+, K-] = -2 K0,
// and group elements are handled through the faithful 2x2 representation
//   sigma(K0) = diag(1/2, -1/2), sigma(K+) = [[0,1],[0,0]], sigma(K-) = [[0,0],[-1,0]].

#include <array>
#include <complex>

namespace su11 {

using cplx = std::complex<double>;

struct AlgebraElement {
  cplx c0{};  // K0
  cplx cm{};  // K-
  cplx cp{};  // K+

  static constexpr AlgebraElement k0() { return {1.0, 0.0, 0.0}; }
  static constexpr AlgebraElement km() { return {0.0, 1.0, 0.0}; }
  static constexpr AlgebraElement kp() { return {0.0, 0.0, 1.0}; }

  /// Exponent of a metric-type group element, A = 2 eps K0 + 2 eta K- + 2 conj(eta) K+.
  static AlgebraElement metric_exponent(double epsilon, cplx eta) {
    return {2.0 * epsilon, 2.0 * eta, 2.0 * std::conj(eta)};
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    c0 += o.c0;
    cm += o.cm;
    cp += o.cp;
    return *this;
  }
  AlgebraElement& operator*=(cplx s) {
    c0 *= s;
    cm *= s;
    cp *= s;
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a += b.scaled(-1.0); }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }
  AlgebraElement scaled(cplx s) const { return s * *this; }

  /// c0^2 - 4 c+ c-; invariant under the adjoint action.
  cplx casimir_form() const { return c0 * c0 - 4.0 * cp * cm; }

  /// Whether the element is Hermitian in every unitary realization.
  bool is_hermitian(double tol = 0.0) const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// Lie bracket computed from the structure constants.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

struct DefiningMatrix {
  cplx m11{}, m12{}, m21{}, m22{};

  static DefiningMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }

  friend DefiningMatrix operator*(const DefiningMatrix& a, const DefiningMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend DefiningMatrix operator+(const DefiningMatrix& a, const DefiningMatrix& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
  }
  friend DefiningMatrix operator-(const DefiningMatrix& a, const DefiningMatrix& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  friend DefiningMatrix operator*(cplx s, const DefiningMatrix& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }
};

/// Largest singular value of a 2x2 complex matrix.
double spectral_norm(const DefiningMatrix& m);

enum class Ordering {
  Normal,      // exp(p K+) exp(q K0) exp(r K-)
  Antinormal,  // exp(r K-) exp(q K0) exp(p K+)
};

struct Factorization {
  cplx p{};  // K+ parameter
  cplx q{};  // K0 parameter
  cplx r{};  // K- parameter
  Ordering ordering = Ordering::Normal;

  /// Product of the three single-generator exponentials in the defining rep.
  DefiningMatrix reconstruct() const;
};

DefiningMatrix defining_rep(const AlgebraElement& x);

/// Inverse of defining_rep on traceless matrices.
AlgebraElement from_defining(const DefiningMatrix& m);

/// exp(sigma(x)) = cosh(theta) I + sinh(theta)/theta sigma(x), theta^2 = -det sigma(x).
/// Imaginary theta is evaluated through sin(phi)/phi.
DefiningMatrix exp_defining(const AlgebraElement& x);

/// Gauss decomposition of a unimodular 2x2 matrix. Throws DecompositionSingular
/// when the pivot (m22 for normal, m11 for antinormal) is below 1e-14.
Factorization gauss_decompose(const DefiningMatrix& m, Ordering ordering);

/// Normal-ordered factor of exp(2 eps K0 + 2 eta K- + 2 conj(eta) K+) alone.
/// Throws TrigRegime or DecompositionSingular.
Factorization normal_factorization(double epsilon, cplx eta);

struct Disentangled {
  Factorization normal;
  Factorization antinormal;
};

/// Closed-form factorizations of exp(2 eps K0 + 2 eta K- + 2 conj(eta) K+).
/// Requires theta^2 = eps^2 - 4|eta|^2 >= 0 (TrigRegime otherwise).
Disentangled disentangle_closed_form(double epsilon, cplx eta);

/// Columns give the coefficients of rho K_j rho^-1 for j = K0, K-, K+, with
/// rho = exp(2 eps K0 + 2 eta K- + 2 conj(eta) K+).
using AdjointMatrix = std::array<std::array<cplx, 3>, 3>;
AdjointMatrix adjoint_matrix(double epsilon, cplx eta);

AlgebraElement apply(const AdjointMatrix& m, const AlgebraElement& x);

/// Coefficients of rho X rho^-1 for a metric-form exponent A = (2 eps, 2 eta, 2 conj(eta)).
/// Throws InvalidParams if A is not of metric form and TrigRegime if theta^2 < 0.
AlgebraElement conjugate(const AlgebraElement& a_exponent, const AlgebraElement& x);

/// Coefficients of exp(sigma(A)) sigma(X) exp(-sigma(A)) for any A, through the
/// defining representation.
AlgebraElement conjugate_defining(const AlgebraElement& a_exponent, const AlgebraElement& x);

/// sinh(t)/t and (cosh(t) - 1)/t^2 with series evaluation near t = 0.
double sinhc(double t);
double coshm1c(double t);

}  // namespace su11
