#pragma once

// Truncated matrix realizations of su(1,1).
//
// Every realization provided here has a diagonal K0 and a K+ supported on a single
// subdiagonal at offset `shift`; K- is its transpose. Truncation to N states only
// corrupts operator products in the last `shift` rows and columns, so identities
// are checked on the leading trusted block.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "su11/algebra.hpp"
#include "su11/eigen.hpp"
#include "su11/matrix.hpp"
#include "su11/metric.hpp"

namespace su11 {

enum class Parity { Even, Odd };

struct DiscreteSeriesKind {
  double k;
};
struct OscillatorSectorKind {
  Parity parity;
};
struct OscillatorFullKind {};
struct MultibosonKind {
  int l;
  std::vector<double> residues;  // alpha_0(R) for R = 0 .. l-1
};
struct RadialKind {
  double L;
};
struct ConformalKind {
  double k;
};

using RealizationKind =
    std::variant<DiscreteSeriesKind, OscillatorSectorKind, OscillatorFullKind, MultibosonKind, RadialKind, ConformalKind>;

std::string describe(const RealizationKind& kind);

/// Lowest K0 weights of the irreducible pieces (Bargmann indices), ascending.
std::vector<double> lowest_weights(const RealizationKind& kind);

struct RealizationMatrices {
  Matrix k0;
  Matrix kp;
  Matrix km;
  std::size_t dim = 0;
  std::size_t trusted = 0;
  std::size_t shift = 1;
  /// Basis state i is level[i] steps up the discrete-series ladder of lowest weight
  /// weight[i]: K0 = level + weight, (K+)^2 = (level + 1)(level + 2 weight).
  std::vector<double> level;
  std::vector<double> weight;
  RealizationKind kind = OscillatorFullKind{};
};

/// K0|n> = (n + k)|n>, K+|n> = sqrt((n+1)(n+2k))|n+1>. Requires k > 0, N >= 2.
RealizationMatrices discrete_series(double k, std::size_t n);

/// K0 = (a^dag a + 1/2)/2, K+ = a^dag^2 / 2, K- = a^2 / 2 on N Fock states. N >= 4.
RealizationMatrices oscillator_full(std::size_t n);

/// The even (n = 0, 2, 4, ...) or odd Fock sector of the oscillator realization.
RealizationMatrices oscillator_sector(Parity parity, std::size_t n);

/// K0 = alpha_0(N), K- = alpha_-(N) a^l, K+ = a^dag^l alpha_-(N). Throws
/// InvalidParams when the alpha_- radicand is negative for some n < N.
RealizationMatrices multiboson(int l, std::vector<double> residues, std::size_t n);

/// R|n> through the root-of-unity sum (l-1)/2 + sum_m exp(-2 pi i m n/l)/(exp(2 pi i m/l) - 1).
cplx residue_operator_value(int l, long n);

/// Radial oscillator with L = l + (d-3)/2; the discrete series with k = (2L+3)/4.
RealizationMatrices radial(double L, std::size_t n);

/// L from spatial dimension and angular momentum.
inline double radial_L(int d, int l) { return l + 0.5 * (d - 3); }

/// Finite-difference K0 = (-d^2/dr^2 + L(L+1)/r^2 + w^2 r^2)/(4w) on (0, r_max),
/// Dirichlet at both ends, `points` interior nodes.
Tridiagonal radial_k0_operator(double L, double omega, double r_max, std::size_t points);

struct ConformalRealization {
  RealizationMatrices matrices;
  SwansonParams params;  // (omega, c/4, -c/4)
  double big_omega;      // sqrt(omega^2 + c^2/4)
};

ConformalRealization conformal(double k, double c, double omega, std::size_t n);

/// c0 k0 + cm km + cp kp. Coefficients must be real (InvalidParams otherwise).
Matrix materialize(const AlgebraElement& x, const RealizationMatrices& r);

/// exp(A) for a real metric-form A = (2 eps, 2 eta, 2 eta), assembled from the
/// normal-ordered factorization exp(p K+) exp(q K0) exp(p K-). Every entry equals
/// the corresponding entry of the untruncated operator; the result is symmetric
/// positive-definite by construction (B B^T).
Matrix exp_element(const AlgebraElement& a, const RealizationMatrices& r);

struct AlgebraResiduals {
  double k0_kp;    // ||[K0, K+] - K+||
  double k0_km;    // ||[K0, K-] + K-||
  double kp_km;    // ||[K+, K-] + 2 K0||
  double adjoint;  // max |K- - K+^T| and K0 asymmetry
  double max() const;
};

/// Spectral norms on the leading t x t block (t = 0 selects r.trusted).
AlgebraResiduals algebra_residuals(const RealizationMatrices& r, std::size_t t = 0);

struct RealizationSpec {
  RealizationKind kind = DiscreteSeriesKind{0.25};
  std::optional<double> conformal_c;
};

/// Parses descriptors such as `discrete:k=0.25`, `oscillator:parity=even`,
/// `oscillator`, `multiboson:l=3,residues=0.25,0.5,0.75`, `radial:L=1`,
/// `radial:d=3,l=0`, `conformal:k=0.75,c=1`. Throws InvalidParams.
RealizationSpec parse_realization(const std::string& descriptor);

RealizationMatrices build_realization(const RealizationSpec& spec, std::size_t n);

}  // namespace su11
