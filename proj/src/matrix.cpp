#include "su11/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "su11/eigen.hpp"
#include "su11/kernels.hpp"

namespace su11 {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t rows, std::size_t cols) const {
  require(rows <= rows_ && cols <= cols_, "matrix shape mismatch");
  Matrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    std::copy_n(data_.data() + i * cols_, cols, b.data_.data() + i * cols);
  return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch");
  kernels::active().axpy(1.0, other.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch");
  kernels::active().axpy(-1.0, other.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch");
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i).data();
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail != 0.0) k.axpy(ail, b.row(l).data(), ci, n);
    }
  }
  return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return matmul(a, b) - matmul(b, a); }

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), "matrix shape mismatch");
  const auto& k = kernels::active();
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
  return y;
}

double frobenius_norm(const Matrix& a) {
  const auto d = a.data();
  return std::sqrt(kernels::active().dot(d.data(), d.data(), d.size()));
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shape mismatch");
  double m = 0.0;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double spectral_norm(const Matrix& a, std::size_t t) {
  const Matrix b = (t == 0) ? a : a.block(t, t);
  if (b.rows() == 0 || b.cols() == 0) return 0.0;
  const double scale = max_abs(b);
  if (scale == 0.0) return 0.0;
  // Gram matrix of the rescaled block keeps the eigenproblem well scaled.
  Matrix s = b;
  s *= 1.0 / scale;
  const Matrix gram = matmul(s.transpose(), s);
  const auto eig = symmetric_eigs(gram);
  return scale * std::sqrt(std::max(0.0, eig.values.back()));
}

double relative_block_residual(const Matrix& a, const Matrix& b, std::size_t t) {
  const double diff = spectral_norm(a - b, t);
  const double ref = std::max(spectral_norm(a, t), spectral_norm(b, t));
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace su11
