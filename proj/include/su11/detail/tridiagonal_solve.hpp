#pragma once

// Pivoted LU of a shifted symmetric tridiagonal matrix (T - shift I), generic in
// the scalar type so the same routine serves double and multiprecision callers.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace su11::detail {

template <class Real>
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const std::vector<Real>& diag, const std::vector<Real>& off, const Real& shift, const Real& tiny)
      : d_(diag.size()), du_(diag.size(), Real(0)), du2_(diag.size(), Real(0)), mult_(diag.size(), Real(0)),
        swapped_(diag.size(), false) {
    using std::abs;
    const std::size_t n = diag.size();
    std::vector<Real> dl(n, Real(0));
    for (std::size_t i = 0; i < n; ++i) d_[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      du_[i] = off[i];
      dl[i] = off[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (abs(d_[i]) >= abs(dl[i])) {
        if (d_[i] == 0) d_[i] = tiny;
        mult_[i] = dl[i] / d_[i];
        d_[i + 1] -= mult_[i] * du_[i];
      } else {
        swapped_[i] = true;
        mult_[i] = d_[i] / dl[i];
        d_[i] = dl[i];
        const Real tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - mult_[i] * du_[i];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -mult_[i] * du2_[i];
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (abs(d_[i]) < tiny) d_[i] = (d_[i] < 0) ? Real(-tiny) : tiny;
  }

  /// Solves in place.
  void solve(std::vector<Real>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= mult_[i] * b[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Real v = b[ii];
      if (ii + 1 < n) v -= du_[ii] * b[ii + 1];
      if (ii + 2 < n) v -= du2_[ii] * b[ii + 2];
      b[ii] = v / d_[ii];
    }
  }

 private:
  std::vector<Real> d_, du_, du2_, mult_;
  std::vector<bool> swapped_;
};

}  // namespace su11::detail
