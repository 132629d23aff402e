#include "su11/realization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "su11/error.hpp"
#include "su11/kernels.hpp"

namespace su11 {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Every supported realization is a direct sum of discrete-series ladders interleaved
// with stride `shift`: basis state i sits at `level[i]` on the ladder of lowest
// weight `weight[i]`.
RealizationMatrices from_ladders(std::vector<double> level, std::vector<double> weight, std::size_t shift,
                                 RealizationKind kind) {
  const std::size_t n = level.size();
  RealizationMatrices r;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = level[i] + weight[i];
  r.k0 = Matrix::diagonal(diag);
  r.kp = Matrix(n, n);
  for (std::size_t j = 0; j + shift < n; ++j) {
    const double radicand = (level[j] + 1.0) * (level[j] + 2.0 * weight[j]);
    if (radicand < 0.0) {
      std::ostringstream msg;
      msg << "alpha_- radicand negative at n=" << j;
      throw Error(ErrorKind::InvalidParams, msg.str());
    }
    r.kp(j + shift, j) = std::sqrt(radicand);
  }
  r.km = r.kp.transpose();
  r.dim = n;
  r.shift = shift;
  r.trusted = n - shift;
  r.level = std::move(level);
  r.weight = std::move(weight);
  r.kind = std::move(kind);
  return r;
}

}  // namespace

std::string describe(const RealizationKind& kind) {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const DiscreteSeriesKind& d) { os << "discrete:k=" << d.k; },
                 [&](const OscillatorSectorKind& o) {
                   os << "oscillator:parity=" << (o.parity == Parity::Even ? "even" : "odd");
                 },
                 [&](const OscillatorFullKind&) { os << "oscillator"; },
                 [&](const MultibosonKind& m) {
                   os << "multiboson:l=" << m.l << ",residues=";
                   for (std::size_t i = 0; i < m.residues.size(); ++i) os << (i ? "," : "") << m.residues[i];
                 },
                 [&](const RadialKind& r) { os << "radial:L=" << r.L; },
                 [&](const ConformalKind& c) { os << "conformal:k=" << c.k; },
             },
             kind);
  return os.str();
}

std::vector<double> lowest_weights(const RealizationKind& kind) {
  std::vector<double> w = std::visit(overloaded{
                                         [](const DiscreteSeriesKind& d) { return std::vector<double>{d.k}; },
                                         [](const OscillatorSectorKind& o) {
                                           return std::vector<double>{o.parity == Parity::Even ? 0.25 : 0.75};
                                         },
                                         [](const OscillatorFullKind&) { return std::vector<double>{0.25, 0.75}; },
                                         [](const MultibosonKind& m) { return m.residues; },
                                         [](const RadialKind& r) { return std::vector<double>{(2.0 * r.L + 3.0) / 4.0}; },
                                         [](const ConformalKind& c) { return std::vector<double>{c.k}; },
                                     },
                                     kind);
  std::sort(w.begin(), w.end());
  return w;
}

RealizationMatrices discrete_series(double k, std::size_t n) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidParams, "discrete series needs k > 0");
  if (n < 2) throw Error(ErrorKind::InvalidParams, "discrete series needs N >= 2");
  std::vector<double> level(n);
  for (std::size_t i = 0; i < n; ++i) level[i] = static_cast<double>(i);
  return from_ladders(std::move(level), std::vector<double>(n, k), 1, DiscreteSeriesKind{k});
}

RealizationMatrices oscillator_full(std::size_t n) {
  if (n < 4) throw Error(ErrorKind::InvalidParams, "oscillator realization needs N >= 4");
  // Fock state 2m + e is level m on the ladder of weight 1/4 + e/2.
  std::vector<double> level(n), weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    level[i] = static_cast<double>(i / 2);
    weight[i] = (i % 2 == 0) ? 0.25 : 0.75;
  }
  return from_ladders(std::move(level), std::move(weight), 2, OscillatorFullKind{});
}

RealizationMatrices oscillator_sector(Parity parity, std::size_t n) {
  if (n < 4) throw Error(ErrorKind::InvalidParams, "oscillator realization needs N >= 4");
  std::vector<double> level(n);
  for (std::size_t j = 0; j < n; ++j) level[j] = static_cast<double>(j);
  return from_ladders(std::move(level), std::vector<double>(n, parity == Parity::Even ? 0.25 : 0.75), 1,
                      OscillatorSectorKind{parity});
}

cplx residue_operator_value(int l, long n) {
  if (l == 1) return 0.0;
  const double two_pi = 2.0 * std::numbers::pi;
  cplx sum = 0.5 * (l - 1);
  for (int m = 1; m < l; ++m) {
    // Reduce the phase exactly before converting to floating point.
    const long phase = (static_cast<long>(m) * n) % l;
    const cplx num = std::polar(1.0, -two_pi * static_cast<double>(phase) / l);
    const cplx den = std::polar(1.0, two_pi * static_cast<double>(m) / l) - 1.0;
    sum += num / den;
  }
  return sum;
}

RealizationMatrices multiboson(int l, std::vector<double> residues, std::size_t n) {
  if (l < 1) throw Error(ErrorKind::InvalidParams, "multiboson needs l >= 1");
  if (residues.size() != static_cast<std::size_t>(l))
    throw Error(ErrorKind::InvalidParams, "multiboson needs exactly l residues");
  if (n <= static_cast<std::size_t>(l)) throw Error(ErrorKind::InvalidParams, "multiboson needs N > l");
  std::vector<double> level(n), weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rem = i % static_cast<std::size_t>(l);
    level[i] = static_cast<double>(i / static_cast<std::size_t>(l));
    weight[i] = residues[rem];
  }
  // K+|n> = alpha_-(n) sqrt((n+1)_l) |n+l>, whose square is the ladder radicand.
  return from_ladders(std::move(level), std::move(weight), static_cast<std::size_t>(l),
                      MultibosonKind{l, std::move(residues)});
}

RealizationMatrices radial(double L, std::size_t n) {
  const double k = (2.0 * L + 3.0) / 4.0;
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidParams, "radial needs 2L + 3 > 0");
  auto r = discrete_series(k, n);
  r.kind = RadialKind{L};
  return r;
}

Tridiagonal radial_k0_operator(double L, double omega, double r_max, std::size_t points) {
  if (!(omega > 0.0) || !(r_max > 0.0) || points < 3)
    throw Error(ErrorKind::InvalidParams, "radial grid needs omega > 0, r_max > 0, points >= 3");
  const double h = r_max / static_cast<double>(points + 1);
  const double scale = 1.0 / (4.0 * omega);
  Tridiagonal t;
  t.diag.resize(points);
  t.off.assign(points - 1, -scale / (h * h));
  for (std::size_t i = 0; i < points; ++i) {
    const double r = h * static_cast<double>(i + 1);
    t.diag[i] = scale * (2.0 / (h * h) + L * (L + 1.0) / (r * r) + omega * omega * r * r);
  }
  return t;
}

ConformalRealization conformal(double k, double c, double omega, std::size_t n) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidParams, "conformal needs k > 0");
  ConformalRealization out;
  out.matrices = discrete_series(k, n);
  out.matrices.kind = ConformalKind{k};
  out.params = SwansonParams{omega, 0.25 * c, -0.25 * c};
  validate_params(out.params);
  out.big_omega = std::sqrt(omega * omega + 0.25 * c * c);
  return out;
}

Matrix materialize(const AlgebraElement& x, const RealizationMatrices& r) {
  const double scale = 1.0 + std::abs(x.c0) + std::abs(x.cm) + std::abs(x.cp);
  const double tol = 1e-14 * scale;
  if (std::abs(x.c0.imag()) > tol || std::abs(x.cm.imag()) > tol || std::abs(x.cp.imag()) > tol)
    throw Error(ErrorKind::InvalidParams, "materialize needs real coefficients for real realizations");
  Matrix m = x.c0.real() * r.k0;
  m += x.cm.real() * r.km;
  m += x.cp.real() * r.kp;
  return m;
}

namespace {

// B B^T with B lower triangular: entry (i, j) only sums over k <= min(i, j).
Matrix lower_gram(const Matrix& b) {
  const auto& k = kernels::active();
  const std::size_t n = b.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = k.dot(b.row(i).data(), b.row(j).data(), i + 1);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

// Normal ordering stays well inside its domain while this pivot is not small.
constexpr double kNormalPivotMargin = 0.25;

}  // namespace

Matrix exp_element(const AlgebraElement& a, const RealizationMatrices& r) {
  const double scale = 1.0 + std::abs(a.c0) + std::abs(a.cm);
  const double tol = 1e-14 * scale;
  if (std::abs(a.c0.imag()) > tol || std::abs(a.cm.imag()) > tol || std::abs(a.cm - a.cp) > tol)
    throw Error(ErrorKind::InvalidParams, "exp_element needs a real metric-form exponent (c+ = c- real)");
  const double epsilon = 0.5 * a.c0.real();
  const double eta = 0.5 * a.cm.real();
  const double theta2 = epsilon * epsilon - 4.0 * eta * eta;
  if (theta2 < 0.0) throw Error(ErrorKind::TrigRegime, "exp_element needs eps^2 - 4 eta^2 >= 0");
  const double theta = std::sqrt(theta2);
  if (std::cosh(theta) - epsilon * sinhc(theta) < kNormalPivotMargin) {
    // exp(A) = exp(A/2) exp(A/2)^T; both factors are symmetric.
    const Matrix half = exp_element(a.scaled(0.5), r);
    const auto& k = kernels::active();
    const std::size_t n = r.dim;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) out(i, j) = out(j, i) = k.dot(half.row(i).data(), half.row(j).data(), n);
    return out;
  }
  const auto f = normal_factorization(epsilon, eta);
  const double p = f.p.real();
  const double q = f.q.real();
  const std::size_t n = r.dim;
  const std::size_t s = r.shift;

  // B = exp(p K+) diag(exp(q K0 / 2)); exp(p K+) is lower triangular with entries
  // p^m/m! times the product of K+ matrix elements along the ladder.
  Matrix b(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double half_weight = std::exp(0.5 * q * r.k0(j, j));
    double entry = 1.0;
    b(j, j) = half_weight;
    for (std::size_t m = 1; j + m * s < n; ++m) {
      entry *= p * r.kp(j + m * s, j + (m - 1) * s) / static_cast<double>(m);
      if (entry == 0.0) break;
      b(j + m * s, j) = entry * half_weight;
    }
  }
  return lower_gram(b);
}

double AlgebraResiduals::max() const { return std::max({k0_kp, k0_km, kp_km, adjoint}); }

AlgebraResiduals algebra_residuals(const RealizationMatrices& r, std::size_t t) {
  if (t == 0) t = r.trusted;
  AlgebraResiduals out;
  out.k0_kp = spectral_norm(commutator(r.k0, r.kp) - r.kp, t);
  out.k0_km = spectral_norm(commutator(r.k0, r.km) + r.km, t);
  out.kp_km = spectral_norm(commutator(r.kp, r.km) + 2.0 * r.k0, t);
  out.adjoint = std::max(max_abs_diff(r.km, r.kp.transpose()), max_abs_diff(r.k0, r.k0.transpose()));
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParams, "realization field '" + key + "' is not a number: '" + v + "'");
  }
}

}  // namespace

RealizationSpec parse_realization(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string family = trim(descriptor.substr(0, colon));
  std::vector<std::pair<std::string, std::vector<std::string>>> fields;
  if (colon != std::string::npos) {
    std::stringstream ss(descriptor.substr(colon + 1));
    std::string token;
    while (std::getline(ss, token, ',')) {
      token = trim(token);
      if (token.empty()) continue;
      const auto eq = token.find('=');
      if (eq == std::string::npos) {
        if (fields.empty()) throw Error(ErrorKind::InvalidParams, "malformed realization descriptor '" + descriptor + "'");
        fields.back().second.push_back(token);
      } else {
        fields.push_back({trim(token.substr(0, eq)), {trim(token.substr(eq + 1))}});
      }
    }
  }
  auto get = [&](const std::string& key) -> const std::vector<std::string>* {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  };
  auto scalar = [&](const std::string& key) -> std::optional<double> {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (v->size() != 1) throw Error(ErrorKind::InvalidParams, "realization field '" + key + "' takes one value");
    return to_double(key, v->front());
  };
  auto require = [&](const std::string& key) {
    auto v = scalar(key);
    if (!v) throw Error(ErrorKind::InvalidParams, family + " realization needs '" + key + "='");
    return *v;
  };

  RealizationSpec spec;
  if (family == "discrete") {
    spec.kind = DiscreteSeriesKind{require("k")};
  } else if (family == "oscillator") {
    const auto* par = get("parity");
    if (!par || par->front() == "full") spec.kind = OscillatorFullKind{};
    else if (par->front() == "even") spec.kind = OscillatorSectorKind{Parity::Even};
    else if (par->front() == "odd") spec.kind = OscillatorSectorKind{Parity::Odd};
    else throw Error(ErrorKind::InvalidParams, "oscillator parity must be even, odd or full");
  } else if (family == "multiboson") {
    const double l = require("l");
    if (l < 1 || l != std::floor(l)) throw Error(ErrorKind::InvalidParams, "multiboson l must be a positive integer");
    std::vector<double> residues;
    if (const auto* v = get("residues")) {
      for (const auto& s : *v) residues.push_back(to_double("residues", s));
    } else {
      // Default (R + 1/2)/l; for l = 2 this is the two-boson oscillator (1/4, 3/4).
      for (int rr = 0; rr < static_cast<int>(l); ++rr) residues.push_back((rr + 0.5) / l);
    }
    spec.kind = MultibosonKind{static_cast<int>(l), std::move(residues)};
  } else if (family == "radial") {
    if (auto L = scalar("L")) {
      spec.kind = RadialKind{*L};
    } else {
      const double d = require("d");
      const double l = require("l");
      spec.kind = RadialKind{radial_L(static_cast<int>(d), static_cast<int>(l))};
    }
  } else if (family == "conformal") {
    spec.kind = ConformalKind{require("k")};
    spec.conformal_c = require("c");
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown realization family '" + family + "'");
  }
  return spec;
}

RealizationMatrices build_realization(const RealizationSpec& spec, std::size_t n) {
  return std::visit(overloaded{
                        [&](const DiscreteSeriesKind& d) { return discrete_series(d.k, n); },
                        [&](const OscillatorSectorKind& o) { return oscillator_sector(o.parity, n); },
                        [&](const OscillatorFullKind&) { return oscillator_full(n); },
                        [&](const MultibosonKind& m) { return multiboson(m.l, m.residues, n); },
                        [&](const RadialKind& r) { return radial(r.L, n); },
                        [&](const ConformalKind& c) {
                          auto r = discrete_series(c.k, n);
                          r.kind = c;
                          return r;
                        },
                    },
                    spec.kind);
}

}  // namespace su11
