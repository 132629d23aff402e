#include <cmath>
#include <random>

#include "doctest.h"
#include "su11/error.hpp"
#include "su11/metric.hpp"

using namespace su11;

namespace {

const SwansonParams kSwanson{1.0, 0.2, 0.1};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidParams;
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate_params(kSwanson));
    CHECK(kind_of([] { validate_params({1.0, 0.3, 0.3}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { validate_params({1.0, 2.0, 2.5}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { validate_params({-1.0, 0.2, 0.1}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { validate_params({1.0, NAN, 0.1}); }) == ErrorKind::InvalidParams);
    try {
      validate_params({1.0, 0.3, 0.3});
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("alpha != beta") != std::string::npos);
    }
  }

  TEST_CASE("admissible z") {
    const auto [lo, hi] = z_excluded(kSwanson);
    CHECK(lo == doctest::Approx(0.202062742113).epsilon(1e-11));
    CHECK(hi == doctest::Approx(0.391996663828).epsilon(1e-11));
    const auto dom = z_domain(kSwanson);
    REQUIRE(dom.size() == 2);
    CHECK(dom[0].lo == -1.0);
    CHECK(dom[0].lo_closed);
    CHECK_FALSE(dom[0].hi_closed);
    CHECK(dom[1].hi == 1.0);
    CHECK_FALSE(z_admissible(kSwanson, 0.3));
    CHECK(z_admissible(kSwanson, 0.2));
    CHECK(z_admissible(kSwanson, 1.0));
    CHECK(z_admissible(kSwanson, -1.0));
    CHECK_FALSE(z_admissible(kSwanson, 1.5));

    // Dense scan of the arctanh argument.
    for (int i = 0; i <= 4000; ++i) {
      const double z = -1.0 + i / 2000.0;
      const double u = (0.1 * std::sqrt(std::max(0.0, 1.0 - z * z))) / (0.3 - z);
      if (std::abs(std::abs(u) - 1.0) < 1e-9) continue;
      CHECK_MESSAGE(z_admissible(kSwanson, z) == (std::abs(u) < 1.0), "z = " << z);
    }

    // Conformal parameters: admissible iff |z| > c / (2 Omega).
    const SwansonParams conf{1.0, 0.25, -0.25};
    const double edge = 0.5 / std::sqrt(1.25);
    CHECK_FALSE(z_admissible(conf, 0.0));
    CHECK_FALSE(z_admissible(conf, edge - 1e-9));
    CHECK(z_admissible(conf, edge + 1e-9));
    CHECK(z_admissible(conf, -edge - 1e-9));
    CHECK(z_excluded(conf).first == doctest::Approx(-edge).epsilon(1e-14));
    CHECK(z_excluded(conf).second == doctest::Approx(edge).epsilon(1e-14));
  }

  TEST_CASE("epsilon") {
    CHECK(solve_epsilon(kSwanson, 0.0) == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-15));
    CHECK(solve_epsilon(kSwanson, 0.0) == doctest::Approx(0.17328679513998633).epsilon(1e-15));
    CHECK(solve_epsilon(kSwanson, 0.5) == doctest::Approx(-0.26765883137874797).epsilon(1e-14));
    CHECK(solve_epsilon(kSwanson, 0.8) == doctest::Approx(-0.10048419034037003).epsilon(1e-14));
    CHECK(solve_epsilon(kSwanson, -0.8) == doctest::Approx(0.045499704985413326).epsilon(1e-14));
    CHECK(solve_epsilon(kSwanson, 0.4) == doctest::Approx(-0.85475905978870554).epsilon(1e-13));
    CHECK(solve_epsilon(kSwanson, 0.95) == doctest::Approx(-0.076982330585906622).epsilon(1e-14));
    CHECK(solve_epsilon(kSwanson, 1.0) == doctest::Approx(-0.071428571428571429).epsilon(1e-15));
    CHECK(solve_epsilon(kSwanson, 1.0 - 1e-8) == doctest::Approx(-0.071428571428571429).epsilon(1e-6));
    CHECK(kind_of([] { solve_epsilon(kSwanson, 0.3); }) == ErrorKind::ZOutOfDomain);
    for (double z : {-0.9, -0.3, 0.0, 0.15, 0.5, 0.9})
      CHECK(std::abs(hermiticity_residual(kSwanson, solve_epsilon(kSwanson, z), z * solve_epsilon(kSwanson, z) / 2)) <=
            1e-14);
  }

  TEST_CASE("transformed coefficients") {
    const double eps = 0.25 * std::log(2.0);
    const auto c = transformed_coeffs(kSwanson, eps, 0.0);
    CHECK(std::abs(c.u - 1.0) <= 1e-15);
    CHECK(std::abs(c.v - 0.2 * std::exp(-2 * eps)) <= 1e-15);
    CHECK(std::abs(c.w - 0.1 * std::exp(2 * eps)) <= 1e-15);
    CHECK(std::abs(c.v - std::sqrt(0.02)) <= 1e-15);
    const auto id = transformed_coeffs(kSwanson, 0.0, 0.0);
    CHECK(id.u == cplx(1.0));
    CHECK(id.v == cplx(0.2));
    CHECK(id.w == cplx(0.1));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const SwansonParams p{1.0 + u(rng) * 0.5, u(rng) * 0.4, u(rng) * 0.4};
      if (p.gap_squared() <= 0.0) continue;
      const double eps = u(rng);
      const cplx eta(u(rng) * std::abs(eps) / 2.5, 0.0);
      const auto t = transformed_coeffs(p, eps, eta);
      CHECK(std::abs(t.u * t.u - 4.0 * t.v * t.w - p.gap_squared()) <= 1e-10);
    }
  }

  TEST_CASE("mu and nu") {
    const auto m = mu_nu(kSwanson, 0.0);
    CHECK(m.mu == doctest::Approx(1.0 - std::sqrt(0.08)).epsilon(1e-15));
    CHECK(m.nu == doctest::Approx(1.0 + std::sqrt(0.08)).epsilon(1e-15));
    CHECK((m.nu + m.mu) == doctest::Approx(2.0));
    CHECK((m.nu - m.mu) / 2.0 == doctest::Approx(0.28284271247461901).epsilon(1e-15));
    for (int i = 0; i < 50; ++i) {
      const double z = -0.99 + i * (1.98 / 49.0);
      if (!z_admissible(kSwanson, z)) continue;
      const auto mn = mu_nu(kSwanson, z);
      CHECK(mn.mu * mn.nu == doctest::Approx(0.92).epsilon(1e-12));
    }
    CHECK(kind_of([] { mu_nu(kSwanson, 1.0); }) == ErrorKind::ZOutOfDomain);
  }

  TEST_CASE("hermitian counterpart") {
    const auto h0 = h_element(kSwanson, 0.0);
    CHECK(std::abs(h0.c0 - 2.0) <= 1e-15);
    CHECK(std::abs(h0.cm - 0.28284271247461901) <= 1e-15);
    CHECK(std::abs(h0.cp - 0.28284271247461901) <= 1e-15);
    CHECK(std::abs(h0.casimir_form() - 3.68) <= 1e-14);
    struct Row {
      double z, c0, cpm;
    };
    for (const Row r : {Row{0.5, 2.026296581635734, 0.32629658163573405}, Row{0.8, 2.0160580184905144, 0.31003626155657149},
                        Row{-0.8, 2.007278144801429, 0.29545115949910685}, Row{0.4, 2.0571428571428571, 0.37142857142857143},
                        Row{0.95, 2.0146238263112787, 0.30769675069014666}}) {
      CAPTURE(r.z);
      const auto h = h_element(kSwanson, r.z);
      CHECK(std::abs(h.c0 - r.c0) <= 1e-12);
      CHECK(std::abs(h.cm - r.cpm) <= 1e-12);
      CHECK(std::abs(h.cp - r.cpm) <= 1e-12);
      const auto viaconj = conjugate(rho_exponent(kSwanson, r.z), kSwanson.hamiltonian());
      CHECK(std::abs(viaconj.c0 - h.c0) + std::abs(viaconj.cm - h.cm) + std::abs(viaconj.cp - h.cp) <= 1e-10);
    }
    // Endpoint: h by conjugation is still Hermitian with the right Casimir.
    const auto h1 = h_element(kSwanson, 1.0);
    CHECK(std::abs(h1.cm - h1.cp) <= 1e-12);
    CHECK(std::abs(h1.casimir_form() - 3.68) <= 1e-12);
  }

  TEST_CASE("exponent, Lambda and O") {
    const auto a = rho_exponent(kSwanson, 0.0);
    CHECK(std::abs(a.c0 - 0.5 * std::log(2.0)) <= 1e-15);
    CHECK(a.cm == cplx(0.0));
    CHECK(lambda_base(kSwanson, 0.0).value() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_FALSE(lambda_base(kSwanson, 1.0).has_value());
    const auto a1 = rho_exponent(kSwanson, 1.0);
    CHECK(std::abs(a1.cm - a1.c0 / 2.0) <= 1e-15);

    CHECK(observable_O(0.0) == AlgebraElement{2.0, 0.0, 0.0});
    CHECK(observable_O(1.0) == AlgebraElement{2.0, 1.0, 1.0});
    for (double z : {-1.0, -0.4, 0.0, 0.6, 1.0}) {
      const auto o = observable_O(z);
      CHECK(std::abs(o.casimir_form() - 4.0 * (1.0 - z * z)) <= 1e-15);
      const auto az = rho_exponent(kSwanson, z);
      const auto br = bracket(az, o);
      CHECK(std::abs(br.c0) + std::abs(br.cm) + std::abs(br.cp) == 0.0);
    }
    CHECK(kind_of([] { observable_O(1.2); }) == ErrorKind::ZOutOfDomain);
    // eps = ln(Lambda) / (4 sqrt(1 - z^2)).
    for (double z : {-0.8, -0.2, 0.5, 0.9}) {
      const double eps = solve_epsilon(kSwanson, z);
      CHECK(std::log(lambda_base(kSwanson, z).value()) / (4.0 * std::sqrt(1.0 - z * z)) ==
            doctest::Approx(eps).epsilon(1e-13));
    }
  }

  TEST_CASE("solve_metric bundles the scalars") {
    const auto s = solve_metric(kSwanson, 0.0);
    CHECK(s.epsilon == doctest::Approx(0.17328679513998633));
    CHECK(s.eta == 0.0);
    CHECK(s.mu.has_value());
    CHECK(std::abs(s.u.imag()) <= 1e-10);
    CHECK(std::abs(s.w - s.v) <= 1e-10);
    const auto e = solve_metric(kSwanson, -1.0);
    CHECK_FALSE(e.mu.has_value());
    CHECK_FALSE(e.lambda.has_value());
    CHECK(kind_of([] { solve_metric(kSwanson, 0.3); }) == ErrorKind::ZOutOfDomain);
  }
}
