#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace su11 {

/// Dense real row-major matrix. All realizations used here are real, so the
/// operator layer never needs complex storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  /// Leading rows x cols submatrix.
  Matrix block(std::size_t rows, std::size_t cols) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

/// a * b through the active SIMD kernel table.
Matrix matmul(const Matrix& a, const Matrix& b);
/// Commutator a*b - b*a.
Matrix commutator(const Matrix& a, const Matrix& b);

std::vector<double> matvec(const Matrix& a, std::span<const double> x);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Largest singular value of the leading t x t block (t = 0 means the whole matrix).
double spectral_norm(const Matrix& a, std::size_t t = 0);

/// ||a - b||_T / max(||a||_T, ||b||_T), spectral norms on the leading t x t block.
/// Returns the absolute difference norm when both operands vanish.
double relative_block_residual(const Matrix& a, const Matrix& b, std::size_t t);

}  // namespace su11
