#include "su11/pdm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "su11/error.hpp"
#include "su11/verification.hpp"

namespace su11 {

namespace {

std::vector<double> grid(const PdmConfig& cfg, double& dx) {
  dx = (cfg.x_max - cfg.x_min) / static_cast<double>(cfg.points + 1);
  std::vector<double> x(cfg.points);
  for (std::size_t i = 0; i < cfg.points; ++i) x[i] = cfg.x_min + static_cast<double>(i + 1) * dx;
  return x;
}

GridOperator empty_operator(const PdmConfig& cfg) {
  GridOperator op;
  op.x = grid(cfg, op.dx);
  op.diag.assign(cfg.points, 0.0);
  op.lower.assign(cfg.points - 1, 0.0);
  op.upper.assign(cfg.points - 1, 0.0);
  return op;
}

// Adds c * d/dx (w(x) d/dx) with w sampled at midpoints.
template <class W>
void add_flux(GridOperator& op, double c, W w) {
  const double inv = c / (op.dx * op.dx);
  for (std::size_t i = 0; i < op.size(); ++i) {
    const double wl = w(op.x[i] - 0.5 * op.dx);
    const double wr = w(op.x[i] + 0.5 * op.dx);
    op.diag[i] -= inv * (wl + wr);
    if (i + 1 < op.size()) {
      op.upper[i] += inv * wr;
      op.lower[i] += inv * wr;
    }
  }
}

// Adds c(x) d/dx by central differences.
template <class C>
void add_first_derivative(GridOperator& op, C c) {
  const double inv = 0.5 / op.dx;
  for (std::size_t i = 0; i < op.size(); ++i) {
    const double ci = c(op.x[i]) * inv;
    if (i + 1 < op.size()) op.upper[i] += ci;
    if (i > 0) op.lower[i - 1] -= ci;
  }
}

template <class V>
void add_potential(GridOperator& op, V v) {
  for (std::size_t i = 0; i < op.size(); ++i) op.diag[i] += v(op.x[i]);
}

double relative_window_norm(const std::vector<double>& r, const std::vector<double>& ref, const std::vector<double>& x,
                            double centre, double half_window) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - centre) > half_window) continue;
    num += r[i] * r[i];
    den += ref[i] * ref[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

void validate_pdm(const PdmConfig& cfg) {
  if (!(cfg.s > 0.0)) throw Error(ErrorKind::InvalidParams, "s > 0 violated");
  if (!(cfg.x_min < cfg.x_max)) throw Error(ErrorKind::InvalidParams, "x_min < x_max violated");
  if (cfg.points < 100) throw Error(ErrorKind::InvalidParams, "points >= 100 violated");
  if (!std::isfinite(cfg.tau)) throw Error(ErrorKind::InvalidParams, "tau must be finite");
  validate_params(cfg.params);
  if (!z_admissible(cfg.params, cfg.z)) {
    std::ostringstream msg;
    msg << "z outside admissible set (z=" << cfg.z << ")";
    throw Error(ErrorKind::ZOutOfDomain, msg.str());
  }
}

std::vector<double> GridOperator::apply(const std::vector<double>& f) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * f[i];
    if (i + 1 < n) v += upper[i] * f[i + 1];
    if (i > 0) v += lower[i - 1] * f[i - 1];
    out[i] = v;
  }
  return out;
}

GridOperator GridOperator::transpose() const {
  GridOperator t = *this;
  std::swap(t.lower, t.upper);
  return t;
}

bool GridOperator::symmetric() const { return lower == upper; }

Tridiagonal GridOperator::tridiagonal() const {
  if (!symmetric()) throw Error(ErrorKind::NotSymmetric, "grid operator is not symmetric");
  return Tridiagonal{diag, upper};
}

double pdm_mass(const PdmConfig& cfg, double mu, double x) {
  return std::exp(-2.0 * cfg.s * x) / (2.0 * mu * cfg.params.omega);
}

double pdm_potential(const PdmConfig& cfg, double mu, double nu, double x) {
  const double w = cfg.params.omega;
  const double shifted = -std::exp(-cfg.s * x) / (2.0 * cfg.s) + cfg.tau;
  return -0.75 * mu * w * cfg.s * cfg.s * std::exp(2.0 * cfg.s * x) + (nu / w) * shifted * shifted;
}

GridOperator build_pdm_h(const PdmConfig& cfg) {
  validate_pdm(cfg);
  const MuNu mn = mu_nu(cfg.params, cfg.z);
  if (!(mn.mu > 0.0)) {
    std::ostringstream msg;
    msg << "mass positivity violated: mu = " << mn.mu << " at z = " << cfg.z;
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  GridOperator h = empty_operator(cfg);
  add_flux(h, -0.5, [&](double x) { return 1.0 / pdm_mass(cfg, mn.mu, x); });
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double v = pdm_potential(cfg, mn.mu, mn.nu, h.x[i]);
    const double a = 1.0 / pdm_mass(cfg, mn.mu, h.x[i] + 0.5 * h.dx);
    if (!std::isfinite(v) || !std::isfinite(a)) {
      std::ostringstream msg;
      msg << "V_eff or 1/m not finite at x = " << h.x[i];
      throw Error(ErrorKind::InvalidParams, msg.str());
    }
    h.diag[i] += v;
  }
  return h;
}

PdmGenerators pdm_generators(const PdmConfig& cfg) {
  validate_pdm(cfg);
  const double s = cfg.s;
  const double tau = cfg.tau;
  auto g = [s](double x) { return -std::exp(-s * x) / s; };
  auto inv_g1_sq = [s](double x) { return std::exp(2.0 * s * x); };                // 1/g'^2
  auto curvature = [s](double x) { return -0.75 * s * s * std::exp(2.0 * s * x); };  // g'''/2g'^3 - 5/4 g''^2/g'^4
  auto shifted = [&](double x) { return 0.5 * g(x) + tau; };
  auto drift = [&](double x) { return (g(x) + 2.0 * tau) * std::exp(s * x); };     // (g + 2 tau)/g'
  auto g2_over = [s](double x) { return -s * std::exp(s * x); };                     // g''/g'^2

  PdmGenerators out{empty_operator(cfg), empty_operator(cfg), empty_operator(cfg)};
  add_flux(out.k0, -0.5, inv_g1_sq);
  add_potential(out.k0, [&](double x) { return 0.5 * (curvature(x) + shifted(x) * shifted(x)); });
  for (int sign : {+1, -1}) {
    GridOperator& k = sign > 0 ? out.kp : out.km;
    add_flux(k, 0.5, inv_g1_sq);
    add_first_derivative(k, [&](double x) { return -0.5 * sign * drift(x); });
    add_potential(k, [&](double x) {
      const double b = shifted(x);
      return 0.5 * (-curvature(x) + sign * g2_over(x) * b + b * b - 0.5 * sign);
    });
  }
  return out;
}

double pdm_centre(const PdmConfig& cfg) { return -std::log(2.0 * cfg.tau * cfg.s) / cfg.s; }

GeneratorResiduals pdm_generator_residuals(const PdmConfig& cfg, double half_window) {
  if (!(cfg.tau > 0.0)) throw Error(ErrorKind::InvalidParams, "tau > 0 needed to place the test window");
  const PdmGenerators k = pdm_generators(cfg);
  const double c = pdm_centre(cfg);
  std::vector<double> f(k.k0.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-0.5 * (k.k0.x[i] - c) * (k.k0.x[i] - c));
  const auto k0f = k.k0.apply(f);
  const auto kpf = k.kp.apply(f);
  const auto kmf = k.km.apply(f);
  const auto k0kpf = k.k0.apply(kpf);
  const auto kpk0f = k.kp.apply(k0f);
  const auto k0kmf = k.k0.apply(kmf);
  const auto kmk0f = k.km.apply(k0f);
  const auto kpkmf = k.kp.apply(kmf);
  const auto kmkpf = k.km.apply(kpf);
  const auto kptf = k.kp.transpose().apply(f);
  const std::size_t n = f.size();
  std::vector<double> r1(n), r2(n), r3(n), r4(n), scale3(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = k0kpf[i] - kpk0f[i] - kpf[i];
    r2[i] = k0kmf[i] - kmk0f[i] + kmf[i];
    r3[i] = kpkmf[i] - kmkpf[i] + 2.0 * k0f[i];
    r4[i] = kptf[i] - kmf[i];
    scale3[i] = 2.0 * k0f[i];
  }
  GeneratorResiduals out;
  out.k0_kp = relative_window_norm(r1, kpf, k.k0.x, c, half_window);
  out.k0_km = relative_window_norm(r2, kmf, k.k0.x, c, half_window);
  out.kp_km = relative_window_norm(r3, scale3, k.k0.x, c, half_window);
  out.adjoint = relative_window_norm(r4, kmf, k.k0.x, c, half_window);
  return out;
}

std::string to_string(PdmVerdict v) {
  switch (v) {
    case PdmVerdict::Pass: return "PASS";
    case PdmVerdict::Fail: return "FAIL";
    case PdmVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

PdmStudy pdm_refinement(PdmConfig cfg, const std::vector<std::size_t>& points, std::size_t count) {
  if (points.empty() || count == 0) throw Error(ErrorKind::InvalidParams, "refinement needs grids and count >= 1");
  PdmStudy study;
  const double quantum = std::sqrt(cfg.params.gap_squared());
  for (std::size_t m = 0; m < count; ++m) study.prediction.push_back(quantum * (static_cast<double>(m) + 0.5));

  study.decayed = true;
  for (std::size_t n : points) {
    cfg.points = n;
    const Tridiagonal t = build_pdm_h(cfg).tridiagonal();
    PdmLevelSet set;
    set.points = n;
    set.eigenvalues = tridiagonal_lowest(t, count);
    for (double lambda : set.eigenvalues) {
      const auto psi = tridiagonal_eigenvector(t, lambda);
      double peak = 0.0;
      for (double v : psi) peak = std::max(peak, std::abs(v));
      const double edge = std::max(std::abs(psi.front()), std::abs(psi.back()));
      set.boundary_amplitude = std::max(set.boundary_amplitude, edge / peak);
    }
    if (!(set.boundary_amplitude < kPdmDecayThreshold)) study.decayed = false;
    study.levels.push_back(std::move(set));
  }
  for (std::size_t g = 1; g < study.levels.size(); ++g) {
    double change = 0.0;
    for (std::size_t m = 0; m < count; ++m)
      change = std::max(change, std::abs(study.levels[g].eigenvalues[m] - study.levels[g - 1].eigenvalues[m]));
    study.changes.push_back(change);
  }
  study.converging = true;
  for (std::size_t g = 1; g < study.changes.size(); ++g)
    if (!(study.changes[g] <= 0.5 * study.changes[g - 1])) study.converging = false;

  const auto& finest = study.levels.back().eigenvalues;
  for (std::size_t m = 0; m < count; ++m)
    study.relative_error =
        std::max(study.relative_error, std::abs(finest[m] - study.prediction[m]) / study.prediction[m]);

  if (!study.decayed)
    study.verdict = PdmVerdict::Inconclusive;
  else
    study.verdict = (study.relative_error <= kPdmSpectralTolerance && study.converging) ? PdmVerdict::Pass
                                                                                         : PdmVerdict::Fail;
  return study;
}

}  // namespace su11
