#include "su11/extended.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "su11/detail/tridiagonal_solve.hpp"
#include "su11/eigen.hpp"
#include "su11/error.hpp"

namespace su11::extended {

namespace mp = boost::multiprecision;

namespace {

template <unsigned Digits>
using Float = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

template <class Real>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<Real> v;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, Real(0)) {}
  Real& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

struct RealMetric {
  double epsilon;
  double eta;
};

RealMetric real_metric(const AlgebraElement& a) {
  const double tol = 1e-14 * (1.0 + std::abs(a.c0) + std::abs(a.cm));
  if (std::abs(a.c0.imag()) > tol || std::abs(a.cm.imag()) > tol || std::abs(a.cm - a.cp) > tol)
    throw Error(ErrorKind::InvalidParams, "block conjugation needs a real metric-form exponent");
  return {0.5 * a.c0.real(), 0.5 * a.cm.real()};
}

struct RealElement {
  double c0, cm, cp;
};

RealElement real_element(const AlgebraElement& x) {
  const double tol = 1e-14 * (1.0 + std::abs(x.c0) + std::abs(x.cm) + std::abs(x.cp));
  if (std::abs(x.c0.imag()) > tol || std::abs(x.cm.imag()) > tol || std::abs(x.cp.imag()) > tol)
    throw Error(ErrorKind::InvalidParams, "block conjugation needs real coefficients");
  return {x.c0.real(), x.cm.real(), x.cp.real()};
}

// K0 and K+ matrix elements recomputed in the working precision from the ladder
// description, so the commutation relations hold to that precision.
template <class Real>
struct Ladders {
  std::vector<Real> k0;  // K0(i, i)
  std::vector<Real> up;  // K+(i + shift, i)
  explicit Ladders(const RealizationMatrices& r) : k0(r.dim), up(r.dim, Real(0)) {
    using std::sqrt;
    if (r.level.size() != r.dim || r.weight.size() != r.dim)
      throw Error(ErrorKind::InvalidParams, "realization carries no ladder description");
    for (std::size_t i = 0; i < r.dim; ++i) {
      const Real level = r.level[i];
      const Real weight = r.weight[i];
      k0[i] = level + weight;
      const Real radicand = (level + 1) * (level + 2 * weight);
      if (i + r.shift < r.dim) up[i] = radicand > 0 ? Real(sqrt(radicand)) : Real(0);
    }
  }
};

// Leading `rows` rows of exp(2 epsilon K0 + 2 eta (K+ + K-)) in the realization.
template <class Real>
Dense<Real> exp_rows(const Real& epsilon, const Real& eta, const RealizationMatrices& r, const Ladders<Real>& lad,
                     std::size_t rows) {
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sinh;
  using std::sqrt;
  const std::size_t n = r.dim;
  const std::size_t s = r.shift;
  const Real theta2 = epsilon * epsilon - 4 * eta * eta;
  if (theta2 < 0) throw Error(ErrorKind::TrigRegime, "block conjugation needs eps^2 - 4 eta^2 >= 0");
  const Real theta = sqrt(theta2);
  const Real sh = theta == 0 ? Real(1) : Real(sinh(theta) / theta);
  const Real minus = cosh(theta) - epsilon * sh;

  Dense<Real> out(rows, n);
  if (minus < Real(0.25)) {
    const Dense<Real> half = exp_rows<Real>(epsilon / 2, eta / 2, r, lad, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Real acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += half(i, l) * half(l, j);
        out(i, j) = acc;
      }
    return out;
  }
  const Real p = 2 * eta * sh / minus;
  const Real q = -2 * log(minus);

  // Columns m < rows of B = exp(p K+) diag(exp(q K0 / 2)).
  Dense<Real> b(n, rows);
  for (std::size_t j = 0; j < rows; ++j) {
    const Real half_weight = exp(q * lad.k0[j] / 2);
    Real entry = 1;
    b(j, j) = half_weight;
    for (std::size_t m = 1; j + m * s < n; ++m) {
      entry *= p * lad.up[j + (m - 1) * s] / Real(static_cast<double>(m));
      if (entry == 0) break;
      b(j + m * s, j) = entry * half_weight;
    }
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Real acc = 0;
      const std::size_t top = std::min(i, l);
      for (std::size_t m = 0; m <= top; ++m) acc += b(i, m) * b(l, m);
      out(i, l) = acc;
    }
  return out;
}

// (X v)_i for the banded real element X = c0 K0 + cm K- + cp K+.
template <class Real>
Real banded_apply(const RealElement& x, const RealizationMatrices& r, const Ladders<Real>& lad, std::size_t i,
                  const std::vector<Real>& v) {
  const std::size_t n = r.dim;
  const std::size_t s = r.shift;
  Real out = Real(x.c0) * lad.k0[i] * v[i];
  if (i + s < n) out += Real(x.cm) * lad.up[i] * v[i + s];
  if (i >= s) out += Real(x.cp) * lad.up[i - s] * v[i - s];
  return out;
}

template <class Real>
double to_double(const Real& v) {
  return static_cast<double>(v);
}

template <class Real>
BlockConjugation run(const RealMetric& m, const RealElement& x, const RealElement& h, const RealizationMatrices& r,
                     std::size_t t, const std::vector<double>& lambdas, int digits) {
  using std::abs;
  using std::log10;
  using std::sqrt;
  const std::size_t n = r.dim;
  const std::size_t s = r.shift;
  const std::size_t wide = std::min(n, t + s);
  const Ladders<Real> lad(r);
  const Dense<Real> rho = exp_rows<Real>(Real(m.epsilon), Real(m.eta), r, lad, t);
  const Dense<Real> inv = exp_rows<Real>(Real(-m.epsilon), Real(-m.eta), r, lad, wide);

  BlockConjugation out;
  out.digits = digits;
  out.conjugated = Matrix(t, t);
  out.identity_check = Matrix(t, t);

  // rho^-1 is symmetric, so column j of X rho^-1 is X applied to row j of rho^-1.
  std::vector<Real> col(n), xcol(n);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t l = 0; l < n; ++l) col[l] = inv(j, l);
    for (std::size_t l = 0; l < n; ++l) xcol[l] = banded_apply(x, r, lad, l, col);
    for (std::size_t i = 0; i < t; ++i) {
      Real acc = 0, acc_id = 0;
      for (std::size_t l = 0; l < n; ++l) {
        acc += rho(i, l) * xcol[l];
        acc_id += rho(i, l) * col[l];
      }
      out.conjugated(i, j) = to_double(acc);
      out.identity_check(i, j) = to_double(acc_id);
    }
  }

  {
    // Rows of exp(2A) up to T + shift.
    const Dense<Real> zeta = exp_rows<Real>(Real(2 * m.epsilon), Real(2 * m.eta), r, lad, wide);
    std::vector<Real> scale(t);
    for (std::size_t i = 0; i < t; ++i) scale[i] = 1 / sqrt(zeta(i, i));

    // exp(2A) against rho rho, both in the diagonal scaling of exp(2A).
    Real defect = 0, size = 0;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        Real sq = 0;
        for (std::size_t l = 0; l < n; ++l) sq += rho(i, l) * rho(j, l);
        const Real zs = zeta(i, j) * scale[i] * scale[j];
        const Real d = zs - sq * scale[i] * scale[j];
        defect += d * d;
        size += zs * zs;
      }
    out.zeta_defect = to_double(sqrt(defect / size));

    // exp(2A) X - X^T exp(2A). Column j of X has entries at rows j and j -/+ shift.
    auto column = [&](std::size_t j, auto&& visit) {
      visit(j, Real(x.c0) * lad.k0[j]);
      if (j >= s) visit(j - s, Real(x.cm) * lad.up[j - s]);
      if (j + s < n) visit(j + s, Real(x.cp) * lad.up[j]);
    };
    out.quasi_defect = Matrix(t, t);
    out.quasi_reference = Matrix(t, t);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        Real zx = 0, xz = 0;
        column(j, [&](std::size_t l, const Real& c) { zx += zeta(i, l) * c; });
        column(i, [&](std::size_t l, const Real& c) { xz += c * zeta(l, j); });
        out.quasi_defect(i, j) = to_double(zx - xz);
        out.quasi_reference(i, j) = to_double(zx);
      }

    // Cholesky of the scaled block; the smallest pivot certifies positive-definiteness.
    Dense<Real> a(t, t);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) a(i, j) = zeta(i, j) * scale[i] * scale[j];
    Real smallest = 1;
    for (std::size_t j = 0; j < t; ++j) {
      Real d = a(j, j);
      for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
      if (d < smallest) smallest = d;
      if (d <= 0) break;
      const Real lj = sqrt(d);
      a(j, j) = lj;
      for (std::size_t i = j + 1; i < t; ++i) {
        Real v = a(i, j);
        for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
        a(i, j) = v / lj;
      }
    }
    out.zeta_cholesky_log10 =
        smallest > 0 ? to_double(Real(log10(smallest))) : -std::numeric_limits<double>::infinity();
  }

  // Eigenvectors of h live on one of the `shift` ladders; each is a tridiagonal chain.
  const Real tiny = Real(1e-300);
  for (double lambda : lambdas) {
    std::size_t chain = s;
    std::vector<std::size_t> idx;
    const double delta = 1e-8 * (1.0 + std::abs(lambda));
    for (std::size_t c = 0; c < s && chain == s; ++c) {
      Tridiagonal tri;
      for (std::size_t i = c; i < n; i += s) {
        tri.diag.push_back(h.c0 * r.k0(i, i));
        if (i + s < n) tri.off.push_back(h.cm * r.km(i, i + s));
      }
      if (sturm_count(tri, lambda + delta) > sturm_count(tri, lambda - delta)) chain = c;
    }
    if (chain == s) throw Error(ErrorKind::NoConvergence, "eigenvalue " + std::to_string(lambda) + " not found on any ladder");
    Tridiagonal tri;
    for (std::size_t i = chain; i < n; i += s) {
      idx.push_back(i);
      tri.diag.push_back(h.c0 * r.k0(i, i));
      if (i + s < n) tri.off.push_back(h.cm * r.km(i, i + s));
    }
    const std::vector<double> start = tridiagonal_eigenvector(tri, lambda);
    std::vector<Real> diag, off;
    for (std::size_t i : idx) {
      diag.push_back(Real(h.c0) * lad.k0[i]);
      if (i + s < n) off.push_back(Real(h.cm) * lad.up[i]);
    }
    std::vector<Real> psi(start.begin(), start.end());
    Real mu = lambda;
    // Rayleigh quotient iteration; converges cubically from a double-accurate start.
    for (int iter = 0; iter < 6; ++iter) {
      const detail::ShiftedTridiagonalLU<Real> lu(diag, off, mu, tiny);
      lu.solve(psi);
      Real norm = 0;
      for (const Real& v : psi) norm += v * v;
      norm = sqrt(norm);
      for (Real& v : psi) v /= norm;
      Real rq = 0;
      for (std::size_t i = 0; i < psi.size(); ++i) {
        Real tv = diag[i] * psi[i];
        if (i > 0) tv += off[i - 1] * psi[i - 1];
        if (i + 1 < psi.size()) tv += off[i] * psi[i + 1];
        rq += psi[i] * tv;
      }
      mu = rq;
    }
    out.refined_eigenvalues.push_back(to_double(mu));

    std::vector<Real> phi(n, Real(0));
    for (std::size_t i = 0; i < wide; ++i) {
      Real acc = 0;
      for (std::size_t k = 0; k < idx.size(); ++k) acc += inv(i, idx[k]) * psi[k];
      phi[i] = acc;
    }
    Real num = 0, den = 0;
    for (std::size_t i = 0; i < t; ++i) {
      const Real res = banded_apply(x, r, lad, i, phi) - mu * phi[i];
      num += res * res;
      den += phi[i] * phi[i];
    }
    out.eigvec_residual = std::max(out.eigvec_residual, to_double(sqrt(num / den)));
  }
  return out;
}

}  // namespace

int choose_digits(double range) {
  if (!(range < 1e3)) {
    const double needed = std::log10(range) + 25.0;
    for (int d : kTiers)
      if (d > 16 && d >= needed) return d;
    throw Error(ErrorKind::NoConvergence, "conjugation would need " + std::to_string(static_cast<int>(needed)) +
                                              " digits; the largest supported tier is 400");
  }
  return 16;
}

BlockConjugation conjugate_block(const AlgebraElement& exponent, const AlgebraElement& x, const AlgebraElement& h,
                                 const RealizationMatrices& r, std::size_t t, const std::vector<double>& lambdas,
                                 int digits) {
  if (t < 1 || t >= r.dim) throw Error(ErrorKind::TruncationTooSmall, "block size must satisfy 1 <= T < N");
  const RealMetric m = real_metric(exponent);
  const RealElement xe = real_element(x);
  const RealElement he = real_element(h);
  switch (digits) {
    case 16: return run<double>(m, xe, he, r, t, lambdas, digits);
    case 50: return run<Float<50>>(m, xe, he, r, t, lambdas, digits);
    case 100: return run<Float<100>>(m, xe, he, r, t, lambdas, digits);
    case 200: return run<Float<200>>(m, xe, he, r, t, lambdas, digits);
    case 400: return run<Float<400>>(m, xe, he, r, t, lambdas, digits);
    default: throw Error(ErrorKind::InvalidParams, "unsupported precision tier " + std::to_string(digits));
  }
}

}  // namespace su11::extended
