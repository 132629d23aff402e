#include <cmath>

#include "doctest.h"
#include "su11/error.hpp"
#include "su11/extended.hpp"
#include "su11/verification.hpp"

using namespace su11;

namespace {

const SwansonParams kSwanson{1.0, 0.2, 0.1};

}  // namespace

TEST_SUITE("verification") {
  TEST_CASE("precision tiers") {
    CHECK(extended::choose_digits(1.0) == 16);
    CHECK(extended::choose_digits(999.0) == 16);
    CHECK(extended::choose_digits(1e3) == 50);
    CHECK(extended::choose_digits(1e25) == 50);
    CHECK(extended::choose_digits(1e26) == 100);
    CHECK(extended::choose_digits(1e89) == 200);
    CHECK(extended::choose_digits(1e300) == 400);
    CHECK_THROWS_AS(extended::choose_digits(INFINITY), Error);
  }

  TEST_CASE("spectrum prediction") {
    const auto s = spectrum_prediction(kSwanson, 0.25, 5);
    const double expect[] = {0.47958315233127197, 2.3979157616563598, 4.3162483709814478, 6.2345809803065357,
                             8.1529135896316237};
    for (int n = 0; n < 5; ++n) CHECK(s[n] == doctest::Approx(expect[n]).epsilon(1e-15));
    const auto merged = spectrum_prediction(kSwanson, {0.25, 0.75}, 4);
    for (int m = 0; m < 4; ++m) CHECK(merged[m] == doctest::Approx(std::sqrt(0.92) * (m + 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(spectrum_prediction({1.0, 2.0, 2.5}, 0.25, 3), Error);
  }

  TEST_CASE("bundle at z = 0") {
    const auto b = build_bundle(kSwanson, 0.0, discrete_series(0.25, 200));
    for (const char* key : {"r_herm", "r_eq10", "r_intertwine", "r_quasi", "r_inverse", "r_zeta", "r_eigvec"}) {
      CAPTURE(key);
      CHECK(b.residuals.at(key) <= 1e-8);
    }
    CHECK(b.residuals.at("r_commute") == 0.0);
    CHECK(b.residuals.at("conj_digits") == 50);
    CHECK(b.h_conj.rows() == 50);
    // rho is diagonal at z = 0.
    const double eps = b.solution.epsilon;
    for (std::size_t n = 0; n < 50; ++n) {
      CHECK(b.rho(n, n) == doctest::Approx(std::exp(2 * eps * (n + 0.25))).epsilon(1e-13));
      if (n > 0) CHECK(b.rho(n, n - 1) == 0.0);
    }
    const auto law = spectrum_prediction(kSwanson, 0.25, 5);
    REQUIRE(b.spectrum_h.size() == 5);
    for (int n = 0; n < 5; ++n) CHECK(b.spectrum_h[n] == doctest::Approx(law[n]).epsilon(1e-12));
  }

  TEST_CASE("bundle near the excluded interval uses a wider precision") {
    const auto b = build_bundle(kSwanson, 0.4, discrete_series(0.25, 200));
    CHECK(b.residuals.at("conj_digits") > 16);
    // Brute-force 160-digit references for this block.
    CHECK(b.h_conj(0, 0) == doctest::Approx(0.514285714285714).epsilon(1e-12));
    CHECK(b.h_conj(49, 49) == doctest::Approx(101.314285714286).epsilon(1e-12));
    CHECK(b.h_conj(49, 48) == doctest::Approx(18.1069047603394).epsilon(1e-12));
    for (const char* key : {"r_herm", "r_eq10", "r_intertwine", "r_quasi", "r_inverse", "r_eigvec"}) {
      CAPTURE(key);
      CHECK(b.residuals.at(key) <= 1e-10);
    }
    CHECK(std::isfinite(b.residuals.at("zeta_chol_log10")));
    CHECK(b.residuals.at("zeta_normal_pivot") > 0.0);
  }

  TEST_CASE("spectrum is z-independent") {
    const auto law = spectrum_prediction(kSwanson, 0.75, 5);
    for (double z : {-0.6, 0.5}) {
      CAPTURE(z);
      const auto b = build_bundle(kSwanson, z, discrete_series(0.75, 120), {.trusted = 40});
      for (int n = 0; n < 5; ++n) CHECK(b.spectrum_h[n] == doctest::Approx(law[n]).epsilon(1e-10));
      CHECK(b.residuals.at("r_herm") <= 1e-10);
    }
  }

  TEST_CASE("trusted block must fit") {
    const auto r = discrete_series(0.25, 40);
    try {
      build_bundle(kSwanson, 0.0, r, {.trusted = 40});
      FAIL("expected TruncationTooSmall");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TruncationTooSmall);
    }
    CHECK_THROWS_AS(build_bundle(kSwanson, 0.3, r, {.trusted = 20}), Error);
  }

  TEST_CASE("oscillator realization spectrum interleaves both sectors") {
    const auto b = build_bundle(kSwanson, -0.2, oscillator_full(120), {.trusted = 40, .spectrum_count = 6});
    const auto law = spectrum_prediction(kSwanson, {0.25, 0.75}, 6);
    for (int m = 0; m < 6; ++m) CHECK(b.spectrum_h[m] == doctest::Approx(law[m]).epsilon(1e-10));
  }
}
