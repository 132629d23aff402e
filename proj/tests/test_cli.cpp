#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "su11/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "su11");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = su11::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& table, const std::string& key) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string k, v;
    row >> k >> v;
    if (k == key) return v;
  }
  return {};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("metric at z = 0") {
    const auto r = invoke({"metric", "--omega", "1", "--alpha", "0.2", "--beta", "0.1", "--z", "0"});
    CHECK(r.code == su11::cli::kExitOk);
    CHECK(std::stod(value_of(r.out, "epsilon")) == doctest::Approx(0.1732868).epsilon(1e-7));
    CHECK(std::stod(value_of(r.out, "mu")) == doctest::Approx(0.7171573).epsilon(1e-7));
    CHECK(std::stod(value_of(r.out, "nu")) == doctest::Approx(1.2828427).epsilon(1e-7));
    CHECK(value_of(r.out, "epsilon") == "0.17328679514");
  }

  TEST_CASE("validate names the violated constraint") {
    const auto r = invoke({"validate", "--omega", "1", "--alpha", "0.3", "--beta", "0.3"});
    CHECK(r.code == su11::cli::kExitInvalid);
    CHECK(r.out.empty());
    CHECK(r.err.find("alpha != beta") != std::string::npos);
    CHECK(invoke({"validate", "--alpha", "2", "--beta", "2.5"}).code == su11::cli::kExitInvalid);
    CHECK(invoke({"validate"}).code == su11::cli::kExitOk);
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"metric", "--z", "0.3"}).code == su11::cli::kExitInvalid);
    CHECK(invoke({"verify", "--N", "40", "--T", "50"}).code == su11::cli::kExitInvalid);
    CHECK(invoke({"metric", "--bogus-flag"}).code == su11::cli::kExitInvalid);
    CHECK(invoke({"spectrum", "--realization", "nonsense"}).code == su11::cli::kExitInvalid);
    const auto d = invoke({"disentangle", "--epsilon", "0.1", "--eta", "0.5"});
    CHECK(d.code == su11::cli::kExitInvalid);
    CHECK(d.err.find("TrigRegime") != std::string::npos);
  }

  TEST_CASE("sweep: no partial output on error") {
    const auto r = invoke({"sweep", "--z-from", "-0.8", "--z-to", "0.3", "--steps", "3", "--N", "80", "--T", "30",
                           "--output", "csv"});
    CHECK(r.code == su11::cli::kExitInvalid);
    CHECK(r.out.empty());
    CHECK(r.err.find("z=0.3") != std::string::npos);
  }

  TEST_CASE("sweep is schedule-independent") {
    const std::vector<std::string> base{"sweep", "--z-from", "-0.8", "--z-to", "0", "--steps", "5",
                                        "--N",   "80",       "--T",    "30",   "--output", "csv"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = invoke(one), b = invoke(four);
    CHECK(a.code == su11::cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 6);
    CHECK(a.out.rfind("z,epsilon,mu,nu,mu_nu_product,U,V,W,r_herm,r_eq10,r_intertwine,r_quasi,r_commute,e0,e1,e2,e3,e4\n",
                      0) == 0);
    CHECK(a.out.find("\n0,") != std::string::npos);
  }

  TEST_CASE("config file with flag override") {
    const auto path = std::filesystem::temp_directory_path() / "su11_cli_test.cfg";
    {
      std::ofstream f(path);
      f << "alpha=0.3\nbeta=0.1\nz=0\n";
    }
    const auto from_file = invoke({"metric", "--config", path.string()});
    CHECK(from_file.code == su11::cli::kExitOk);
    CHECK(value_of(from_file.out, "mu_nu_product") == "0.88");
    const auto overridden = invoke({"metric", "--config", path.string(), "--alpha", "0.2"});
    CHECK(value_of(overridden.out, "mu_nu_product") == "0.92");
    std::filesystem::remove(path);
  }

  TEST_CASE("sweep grid") {
    su11::cli::RunConfig cfg;
    const auto g = su11::cli::sweep_grid(cfg);
    REQUIRE(g.size() == 9);
    CHECK(g.front() == -0.8);
    CHECK(g[4] == 0.0);
    CHECK(g.back() == doctest::Approx(0.8).epsilon(1e-15));
    cfg.steps = 1;
    cfg.z_to = cfg.z_from;
    CHECK(su11::cli::sweep_grid(cfg).size() == 1);
  }
}
