#include "su11/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "su11/detail/tridiagonal_solve.hpp"
#include "su11/error.hpp"
#include "su11/kernels.hpp"

namespace su11 {

SymmetricEigen symmetric_eigs(const Matrix& m, const JacobiOptions& options) {
  if (!m.square()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  const std::size_t n = m.rows();
  const double scale = max_abs(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > options.symmetry_tolerance * scale)
        throw Error(ErrorKind::NotSymmetric,
                    "asymmetry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");

  const auto& k = kernels::active();
  Matrix a = m;
  Matrix vt = Matrix::identity(n);  // rows are the eigenvectors
  // Symmetrize exactly so the row/column copies below stay consistent.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  const double eps = std::numeric_limits<double>::epsilon();
  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off == 0.0 || std::sqrt(off) <= eps * 1e-2 * std::sqrt(diag + 2.0 * off)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (sweep > 3 && std::abs(apq) <= eps * 1e-2 * std::min(std::abs(app), std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        k.rot(a.row(p).data(), a.row(q).data(), c, s, n);
        k.rot(vt.row(p).data(), vt.row(q).data(), c, s, n);
        for (std::size_t r = 0; r < n; ++r) {
          a(r, p) = a(p, r);
          a(r, q) = a(q, r);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  if (sweep == options.max_sweeps)
    throw Error(ErrorKind::NoConvergence,
                "Jacobi did not converge in " + std::to_string(options.max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweep;
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vt(order[j], i);
  }
  return out;
}

Matrix exp_symmetric(const Matrix& m, double scale) {
  const auto eig = symmetric_eigs(m);
  const std::size_t n = m.rows();
  Matrix scaled = eig.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double f = std::exp(scale * eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
  }
  return matmul(scaled, eig.vectors.transpose());
}

Matrix Tridiagonal::dense() const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = off[i];
  }
  return m;
}

std::size_t sturm_count(const Tridiagonal& t, double x) {
  const std::size_t n = t.size();
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = (i == 0) ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - ((i == 0) ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_lowest(const Tridiagonal& t, std::size_t count) {
  const std::size_t n = t.size();
  count = std::min(count, n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> values(count);
  for (std::size_t j = 0; j < count; ++j) {
    // Smallest x with sturm_count(x) > j.
    double a = lo;
    double b = hi;
    for (int it = 0; it < 200 && b - a > 2.0 * eps * std::max(std::abs(a), std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(t, mid) > j) b = mid;
      else a = mid;
    }
    values[j] = 0.5 * (a + b);
    lo = a;
  }
  return values;
}

std::vector<double> tridiagonal_eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.size();
  if (n == 1) return {1.0};
  double scale = 1.0;
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  const detail::ShiftedTridiagonalLU<double> lu(t.diag, t.off, lambda,
                                                std::numeric_limits<double>::epsilon() * scale);
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int iter = 0; iter < 4; ++iter) {
    lu.solve(x);
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  // Fix the sign so the largest component is positive.
  const auto it = std::max_element(x.begin(), x.end(), [](double p, double q) { return std::abs(p) < std::abs(q); });
  if (*it < 0.0)
    for (double& v : x) v = -v;
  return x;
}

}  // namespace su11
