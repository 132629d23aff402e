#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "su11/metric.hpp"

namespace su11::cli {

enum class Command { Validate, Disentangle, Metric, Spectrum, Sweep, Pdm, Verify };
enum class Format { Table, Csv };

struct RunConfig {
  Command command = Command::Metric;
  SwansonParams params{1.0, 0.2, 0.1};
  std::optional<double> z;
  double z_from = -0.8;
  double z_to = 0.8;
  std::size_t steps = 9;
  std::string realization = "discrete:k=0.25";
  std::size_t n = 200;
  std::size_t t = 50;
  std::size_t count = 5;
  Format output = Format::Table;
  double tolerance = 1e-6;
  double spectrum_tolerance = 1e-6;
  std::size_t threads = 0;  // 0: hardware concurrency
  // disentangle
  std::optional<double> epsilon;
  std::optional<double> eta;
  // pdm
  double s = 0.1;
  double tau = 8.0;
  double x_min = -15.0;
  double x_max = 20.0;
  std::vector<std::size_t> points{1000, 2000, 4000};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// The z values of a sweep: `steps` points evenly spaced from z_from to z_to.
std::vector<double> sweep_grid(const RunConfig& cfg);

/// Runs one command. Output goes to `out` only when the command completes; errors
/// go to `err`. Returns one of the exit codes above.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses flags (and an optional key=value --config file; flags win) and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su11::cli
