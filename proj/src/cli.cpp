#include "su11/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "su11/algebra.hpp"
#include "su11/error.hpp"
#include "su11/pdm.hpp"
#include "su11/realization.hpp"
#include "su11/verification.hpp"

namespace su11::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(std::optional<double> v) { return v ? num(*v) : std::string("nan"); }

// Rows of strings rendered either as an aligned table or as CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& os, Format f) const {
    if (f == Format::Csv) {
      write_csv(os, header_);
      for (const auto& r : rows_) write_csv(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t c = 0; c < r.size(); ++c) {
        s += r[c];
        if (c + 1 < r.size()) s += std::string(width[c] - r[c].size() + 2, ' ');
      }
      os << s << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void write_csv(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Table key_values() { return Table({"quantity", "value"}); }

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams:
    case ErrorKind::ZOutOfDomain:
    case ErrorKind::TrigRegime:
      return kExitInvalid;
    default:
      return kExitNumerical;
  }
}

double require_z(const RunConfig& cfg) {
  if (!cfg.z) throw Error(ErrorKind::InvalidParams, "--z is required for this command");
  return *cfg.z;
}

struct Setup {
  SwansonParams params;
  RealizationSpec spec;
};

// The conformal realization fixes alpha = -beta = c/4.
Setup setup(const RunConfig& cfg) {
  Setup s{cfg.params, parse_realization(cfg.realization)};
  if (s.spec.conformal_c) {
    s.params.alpha = 0.25 * *s.spec.conformal_c;
    s.params.beta = -0.25 * *s.spec.conformal_c;
  }
  validate_params(s.params);
  if (cfg.t < 2 || cfg.n <= cfg.t) throw Error(ErrorKind::InvalidParams, "N > T >= 2 violated");
  return s;
}

std::string interval_text(const ZInterval& iv) {
  return std::string(iv.lo_closed ? "[" : "(") + num(iv.lo) + ", " + num(iv.hi) + (iv.hi_closed ? "]" : ")");
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  validate_params(cfg.params);
  Table t = key_values();
  t.add({"omega", num(cfg.params.omega)});
  t.add({"alpha", num(cfg.params.alpha)});
  t.add({"beta", num(cfg.params.beta)});
  t.add({"gap_squared", num(cfg.params.gap_squared())});
  std::string dom;
  for (const auto& iv : z_domain(cfg.params)) dom += (dom.empty() ? "" : " U ") + interval_text(iv);
  t.add({"z_domain", dom.empty() ? "empty" : dom});
  if (cfg.z) {
    if (!z_admissible(cfg.params, *cfg.z))
      throw Error(ErrorKind::ZOutOfDomain, "z = " + num(*cfg.z) + " is outside the admissible set " + dom);
    t.add({"z", num(*cfg.z)});
    t.add({"z_admissible", "yes"});
  }
  t.add({"valid", "yes"});
  t.render(out, cfg.output);
  return kExitOk;
}

int cmd_disentangle(const RunConfig& cfg, std::ostream& out) {
  double epsilon = 0.0, eta = 0.0;
  if (cfg.epsilon || cfg.eta) {
    if (!cfg.epsilon || !cfg.eta) throw Error(ErrorKind::InvalidParams, "--epsilon and --eta go together");
    epsilon = *cfg.epsilon;
    eta = *cfg.eta;
  } else {
    const MetricSolution m = solve_metric(cfg.params, require_z(cfg));
    epsilon = m.epsilon;
    eta = m.eta;
  }
  const AlgebraElement a = AlgebraElement::metric_exponent(epsilon, eta);
  const DefiningMatrix target = exp_defining(a);
  const Disentangled d = disentangle_closed_form(epsilon, eta);
  const double rn = spectral_norm(d.normal.reconstruct() - target);
  const double ra = spectral_norm(d.antinormal.reconstruct() - target);

  Table t({"ordering", "p", "q", "r", "residual"});
  auto row = [&](const char* name, const Factorization& f, double res) {
    t.add({name, num(f.p.real()), num(f.q.real()), num(f.r.real()), num(res)});
  };
  row("normal", d.normal, rn);
  row("antinormal", d.antinormal, ra);
  t.render(out, cfg.output);
  return std::max(rn, ra) <= cfg.tolerance ? kExitOk : kExitResidual;
}

int cmd_metric(const RunConfig& cfg, std::ostream& out) {
  const MetricSolution m = solve_metric(cfg.params, require_z(cfg));
  Table t = key_values();
  t.add({"z", num(m.z)});
  t.add({"epsilon", num(m.epsilon)});
  t.add({"eta", num(m.eta)});
  t.add({"theta", num(m.theta)});
  t.add({"mu", num(m.mu)});
  t.add({"nu", num(m.nu)});
  t.add({"mu_nu_product", (m.mu && m.nu) ? num(*m.mu * *m.nu) : std::string("nan")});
  t.add({"lambda", num(m.lambda)});
  t.add({"U", num(m.u.real())});
  t.add({"V", num(m.v.real())});
  t.add({"W", num(m.w.real())});
  t.add({"im_U", num(m.u.imag())});
  t.add({"h_K0", num(m.h.c0.real())});
  t.add({"h_Kminus", num(m.h.cm.real())});
  t.add({"h_Kplus", num(m.h.cp.real())});
  const double herm = std::max(std::abs(m.u.imag()), std::abs(m.w - m.v));
  t.add({"hermiticity_residual", num(herm)});
  t.render(out, cfg.output);
  return herm <= cfg.tolerance ? kExitOk : kExitResidual;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Setup s = setup(cfg);
  const MetricSolution m = solve_metric(s.params, require_z(cfg));
  const RealizationMatrices r = build_realization(s.spec, cfg.n);
  const auto eig = symmetric_eigs(materialize(m.h, r));
  const std::size_t count = std::min(cfg.count, cfg.t / 2);
  const auto pred = spectrum_prediction(s.params, lowest_weights(r.kind), count);
  Table t({"n", "eigenvalue", "predicted", "relative_error"});
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double rel = std::abs(eig.values[i] - pred[i]) / std::abs(pred[i]);
    worst = std::max(worst, rel);
    t.add({std::to_string(i), num(eig.values[i]), num(pred[i]), num(rel)});
  }
  t.render(out, cfg.output);
  return worst <= cfg.spectrum_tolerance ? kExitOk : kExitResidual;
}

const std::vector<std::string> kSweepResiduals = {"r_herm", "r_eq10", "r_intertwine", "r_quasi", "r_commute"};

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const Setup s = setup(cfg);
  const auto grid = sweep_grid(cfg);
  const RealizationMatrices r = build_realization(s.spec, cfg.n);
  BundleOptions opts;
  opts.trusted = cfg.t;
  opts.spectrum_count = 5;
  opts.certify_eigenvectors = false;

  struct Row {
    std::vector<std::string> cells;
    bool ok = true;
    std::exception_ptr error;
  };
  std::vector<Row> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const OperatorBundle b = build_bundle(s.params, grid[i], r, opts);
        const MetricSolution& m = b.solution;
        Row& row = rows[i];
        row.cells = {num(grid[i]), num(m.epsilon), num(m.mu), num(m.nu),
                     (m.mu && m.nu) ? num(*m.mu * *m.nu) : std::string("nan"), num(m.u.real()), num(m.v.real()),
                     num(m.w.real())};
        for (const auto& name : kSweepResiduals) {
          const double v = b.residuals.at(name);
          row.cells.push_back(num(v));
          if (!(v <= cfg.tolerance)) row.ok = false;
        }
        for (std::size_t e = 0; e < 5; ++e)
          row.cells.push_back(e < b.spectrum_h.size() ? num(b.spectrum_h[e]) : std::string("nan"));
      } catch (...) {
        rows[i].error = std::current_exception();
      }
    }
  };
  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, grid.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // The first failure in z order decides, independent of the schedule.
  for (const auto& row : rows)
    if (row.error) std::rethrow_exception(row.error);

  std::vector<std::string> header = {"z", "epsilon", "mu", "nu", "mu_nu_product", "U", "V", "W"};
  header.insert(header.end(), kSweepResiduals.begin(), kSweepResiduals.end());
  for (int e = 0; e < 5; ++e) header.push_back("e" + std::to_string(e));
  Table t(header);
  bool ok = true;
  for (auto& row : rows) {
    ok = ok && row.ok;
    t.add(std::move(row.cells));
  }
  t.render(out, cfg.output);
  return ok ? kExitOk : kExitResidual;
}

int cmd_pdm(const RunConfig& cfg, std::ostream& out) {
  PdmConfig p;
  p.s = cfg.s;
  p.tau = cfg.tau;
  p.x_min = cfg.x_min;
  p.x_max = cfg.x_max;
  p.params = cfg.params;
  p.z = cfg.z.value_or(0.0);
  auto points = cfg.points;
  std::sort(points.begin(), points.end());
  const std::size_t count = std::max<std::size_t>(1, std::min<std::size_t>(cfg.count, 3));
  const PdmStudy st = pdm_refinement(p, points, count);

  std::vector<std::string> header = {"points"};
  for (std::size_t m = 0; m < count; ++m) header.push_back("e" + std::to_string(m));
  header.push_back("max_change");
  header.push_back("boundary_amplitude");
  Table t(header);
  for (std::size_t g = 0; g < st.levels.size(); ++g) {
    std::vector<std::string> row = {std::to_string(st.levels[g].points)};
    for (double e : st.levels[g].eigenvalues) row.push_back(num(e));
    row.push_back(g ? num(st.changes[g - 1]) : std::string("nan"));
    row.push_back(num(st.levels[g].boundary_amplitude));
    t.add(std::move(row));
  }
  std::vector<std::string> pred = {"predicted"};
  for (double e : st.prediction) pred.push_back(num(e));
  pred.push_back("nan");
  pred.push_back("nan");
  t.add(std::move(pred));
  t.render(out, cfg.output);
  if (cfg.output == Format::Table) {
    out << "relative_error  " << num(st.relative_error) << '\n';
    out << "converging      " << (st.converging ? "yes" : "no") << '\n';
    out << "decayed         " << (st.decayed ? "yes" : "no") << '\n';
    out << "verdict         " << to_string(st.verdict) << '\n';
  }
  return st.verdict == PdmVerdict::Pass ? kExitOk : kExitResidual;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Setup s = setup(cfg);
  const double z = require_z(cfg);
  const RealizationMatrices r = build_realization(s.spec, cfg.n);
  BundleOptions opts;
  opts.trusted = cfg.t;
  opts.spectrum_count = cfg.count;
  const OperatorBundle b = build_bundle(s.params, z, r, opts);
  const std::map<std::string, double> limits = {
      {"r_herm", cfg.tolerance},  {"r_eq10", cfg.tolerance},   {"r_intertwine", cfg.tolerance},
      {"r_quasi", cfg.tolerance}, {"r_commute", cfg.tolerance}, {"r_inverse", cfg.tolerance},
      {"r_zeta", cfg.tolerance},  {"r_eigvec", cfg.tolerance}};
  Table t({"check", "value", "limit", "status"});
  bool ok = true;
  for (const auto& [name, value] : b.residuals) {
    const auto it = limits.find(name);
    if (it == limits.end()) {
      t.add({name, num(value), "", "info"});
      continue;
    }
    const bool pass = value <= it->second;
    ok = ok && pass;
    t.add({name, num(value), num(it->second), pass ? "ok" : "exceeds"});
  }
  const auto pred = spectrum_prediction(s.params, lowest_weights(r.kind), b.spectrum_h.size());
  for (std::size_t i = 0; i < b.spectrum_h.size(); ++i) {
    const double rel = std::abs(b.spectrum_h[i] - pred[i]) / std::abs(pred[i]);
    const bool pass = rel <= cfg.spectrum_tolerance;
    ok = ok && pass;
    t.add({"e" + std::to_string(i), num(b.spectrum_h[i]), num(pred[i]), pass ? "ok" : "exceeds"});
  }
  t.render(out, cfg.output);
  return ok ? kExitOk : kExitResidual;
}

}  // namespace

std::vector<double> sweep_grid(const RunConfig& cfg) {
  if (cfg.steps < 1) throw Error(ErrorKind::InvalidParams, "steps >= 1 violated");
  if (cfg.steps > 1 && !(cfg.z_from < cfg.z_to)) throw Error(ErrorKind::InvalidParams, "z_from < z_to violated");
  std::vector<double> z(cfg.steps);
  for (std::size_t j = 0; j < cfg.steps; ++j) {
    const double f = cfg.steps == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(cfg.steps - 1);
    z[j] = cfg.z_from + f * (cfg.z_to - cfg.z_from);
    // Snap values within rounding of zero so that e.g. -0.8 + 4 * 0.2 prints as 0.
    if (std::abs(z[j]) < 1e-14 * (std::abs(cfg.z_from) + std::abs(cfg.z_to))) z[j] = 0.0;
  }
  return z;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  try {
    int code = kExitOk;
    switch (cfg.command) {
      case Command::Validate: code = cmd_validate(cfg, buffer); break;
      case Command::Disentangle: code = cmd_disentangle(cfg, buffer); break;
      case Command::Metric: code = cmd_metric(cfg, buffer); break;
      case Command::Spectrum: code = cmd_spectrum(cfg, buffer); break;
      case Command::Sweep: code = cmd_sweep(cfg, buffer); break;
      case Command::Pdm: code = cmd_pdm(cfg, buffer); break;
      case Command::Verify: code = cmd_verify(cfg, buffer); break;
    }
    out << buffer.str();
    if (code == kExitResidual) err << "note: a residual exceeds its tolerance\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"su(1,1) metric operators for the generalized Swanson oscillator", "su11"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  double z = 0.0;
  double epsilon = 0.0, eta = 0.0;
  std::string output = "table";

  app.add_option("--omega", cfg.params.omega, "omega > 0")->capture_default_str();
  app.add_option("--alpha", cfg.params.alpha, "alpha (K- coefficient / 2)")->capture_default_str();
  app.add_option("--beta", cfg.params.beta, "beta (K+ coefficient / 2)")->capture_default_str();
  auto* zopt = app.add_option("--z", z, "metric parameter z in [-1, 1]");
  app.add_option("--z-from", cfg.z_from, "sweep start")->capture_default_str();
  app.add_option("--z-to", cfg.z_to, "sweep end")->capture_default_str();
  app.add_option("--steps", cfg.steps, "sweep points")->capture_default_str();
  app.add_option("--realization", cfg.realization,
                 "discrete:k=K | oscillator[:parity=even|odd] | multiboson:l=L[,residues=a,b,..] | radial:L=L | "
                 "radial:d=D,l=l | conformal:k=K,c=C")
      ->capture_default_str();
  app.add_option("--N", cfg.n, "realization dimension")->capture_default_str();
  app.add_option("--T", cfg.t, "trusted block size")->capture_default_str();
  app.add_option("--count", cfg.count, "number of eigenvalues reported")->capture_default_str();
  app.add_option("--output", output, "table or csv")->check(CLI::IsMember({"table", "csv"}))->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "residual tolerance")->capture_default_str();
  app.add_option("--spectrum-tol", cfg.spectrum_tolerance, "relative eigenvalue tolerance")->capture_default_str();
  app.add_option("--threads", cfg.threads, "sweep worker threads (0: all cores)")->capture_default_str();
  auto* eps_opt = app.add_option("--epsilon", epsilon, "disentangle: epsilon");
  auto* eta_opt = app.add_option("--eta", eta, "disentangle: eta");
  app.add_option("--s", cfg.s, "pdm: mass exponent s > 0")->capture_default_str();
  app.add_option("--tau", cfg.tau, "pdm: integration constant tau")->capture_default_str();
  app.add_option("--x-min", cfg.x_min, "pdm: left wall")->capture_default_str();
  app.add_option("--x-max", cfg.x_max, "pdm: right wall")->capture_default_str();
  app.add_option("--points", cfg.points, "pdm: grid sizes, comma separated")->delimiter(',')->capture_default_str();

  const std::vector<std::pair<std::string, Command>> commands = {
      {"validate", Command::Validate}, {"disentangle", Command::Disentangle}, {"metric", Command::Metric},
      {"spectrum", Command::Spectrum}, {"sweep", Command::Sweep},             {"pdm", Command::Pdm},
      {"verify", Command::Verify}};
  const std::map<std::string, std::string> help = {
      {"validate", "check (omega, alpha, beta) and print the admissible z set"},
      {"disentangle", "normal and antinormal factorizations of exp(A)"},
      {"metric", "epsilon, mu, nu, U, V, W and h at one z"},
      {"spectrum", "lowest eigenvalues of h in a realization"},
      {"sweep", "metric quantities, residuals and spectrum over a z grid (CSV)"},
      {"pdm", "position-dependent-mass grid study"},
      {"verify", "all residuals of the matrix bundle at one z"}};
  std::vector<CLI::App*> subs;
  app.fallthrough();
  for (const auto& [name, c] : commands) subs.push_back(app.add_subcommand(name, help.at(name)));

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) cfg.command = commands[i].second;
  if (zopt->count()) cfg.z = z;
  if (eps_opt->count()) cfg.epsilon = epsilon;
  if (eta_opt->count()) cfg.eta = eta;
  cfg.output = output == "csv" ? Format::Csv : Format::Table;
  return run(cfg, out, err);
}

}  // namespace su11::cli
