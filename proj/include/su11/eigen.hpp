#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "su11/matrix.hpp"

namespace su11 {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
  int sweeps = 0;
};

struct JacobiOptions {
  int max_sweeps = 60;
  double symmetry_tolerance = 1e-10;
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
/// Throws NotSymmetric or NoConvergence.
SymmetricEigen symmetric_eigs(const Matrix& m, const JacobiOptions& options = {});

/// Q exp(scale * Lambda) Q^T for symmetric m.
Matrix exp_symmetric(const Matrix& m, double scale);

/// Symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  Matrix dense() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const Tridiagonal& t, double x);

/// The lowest `count` eigenvalues, ascending, by bisection to rounding level.
std::vector<double> tridiagonal_lowest(const Tridiagonal& t, std::size_t count);

/// Unit-norm eigenvector for an (accurate) eigenvalue, by inverse iteration.
std::vector<double> tridiagonal_eigenvector(const Tridiagonal& t, double lambda);

}  // namespace su11
