#pragma once

// Finite-difference realization with g(x) = -exp(-s x)/s: exponential mass and a
// Morse-like effective potential.

#include <cstddef>
#include <string>
#include <vector>

#include "su11/eigen.hpp"
#include "su11/metric.hpp"

namespace su11 {

struct PdmConfig {
  double s = 0.1;
  double tau = 8.0;
  double x_min = -15.0;
  double x_max = 20.0;
  std::size_t points = 2000;
  SwansonParams params{1.0, 0.2, 0.1};
  double z = 0.0;
};

/// Throws InvalidParams unless s > 0, x_min < x_max, points >= 100 and the
/// hamiltonian parameters are valid; ZOutOfDomain for inadmissible z.
void validate_pdm(const PdmConfig& cfg);

/// A tridiagonal operator on the interior grid x_i = x_min + (i + 1) dx,
/// i = 0 .. points-1, with Dirichlet walls at x_min and x_max.
struct GridOperator {
  std::vector<double> x;
  double dx = 0.0;
  std::vector<double> diag;
  std::vector<double> lower;  // M(i + 1, i)
  std::vector<double> upper;  // M(i, i + 1)

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<double> apply(const std::vector<double>& f) const;
  GridOperator transpose() const;
  bool symmetric() const;
  /// Requires symmetric().
  Tridiagonal tridiagonal() const;
};

/// m(x) = exp(-2 s x) / (2 mu omega).
double pdm_mass(const PdmConfig& cfg, double mu, double x);

/// -3/4 mu omega s^2 exp(2 s x) + (nu/omega)(-exp(-s x)/(2 s) + tau)^2.
double pdm_potential(const PdmConfig& cfg, double mu, double nu, double x);

/// h = -1/2 d/dx (1/m) d/dx + V_eff with a midpoint-mass flux stencil. Throws
/// InvalidParams when the mass is not positive or V_eff is not finite on the grid.
GridOperator build_pdm_h(const PdmConfig& cfg);

struct PdmGenerators {
  GridOperator k0;
  GridOperator kp;
  GridOperator km;
};

/// K0, K+ and K- of the g(x) realization; first derivatives by central differences.
PdmGenerators pdm_generators(const PdmConfig& cfg);

/// x where g(x) = -2 tau, the centre of the low-lying eigenfunctions.
double pdm_centre(const PdmConfig& cfg);

struct GeneratorResiduals {
  double k0_kp = 0.0;    // [K0, K+] - K+
  double k0_km = 0.0;    // [K0, K-] + K-
  double kp_km = 0.0;    // [K+, K-] + 2 K0
  double adjoint = 0.0;  // K+^T - K-
};

/// Relative residuals on a Gaussian test function of unit width at pdm_centre,
/// measured on the window |x - centre| <= half_window.
GeneratorResiduals pdm_generator_residuals(const PdmConfig& cfg, double half_window = 6.0);

struct PdmLevelSet {
  std::size_t points = 0;
  std::vector<double> eigenvalues;
  /// max over the reported states of |psi| at the first and last grid point,
  /// relative to max |psi|.
  double boundary_amplitude = 0.0;
};

enum class PdmVerdict { Pass, Fail, Inconclusive };

std::string to_string(PdmVerdict v);

struct PdmStudy {
  std::vector<PdmLevelSet> levels;
  std::vector<double> prediction;
  /// Largest relative deviation from the prediction on the finest grid.
  double relative_error = 0.0;
  /// max |lambda_fine - lambda_coarse| between consecutive grids.
  std::vector<double> changes;
  bool converging = false;  // each change at most half the previous one
  bool decayed = false;     // boundary amplitude below the threshold on every grid
  PdmVerdict verdict = PdmVerdict::Fail;
};

inline constexpr double kPdmDecayThreshold = 1e-8;
inline constexpr double kPdmSpectralTolerance = 0.01;

/// Lowest `count` eigenvalues on each grid in `points` (ascending sizes). The
/// verdict is Inconclusive when the decay check fails, otherwise Pass iff the
/// finest grid is within 1% of sqrt(w^2 - 4ab)(m + 1/2) and the changes shrink.
PdmStudy pdm_refinement(PdmConfig cfg, const std::vector<std::size_t>& points, std::size_t count = 3);

}  // namespace su11
