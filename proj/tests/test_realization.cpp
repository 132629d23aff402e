#include <cmath>

#include "doctest.h"
#include "su11/error.hpp"
#include "su11/realization.hpp"

using namespace su11;

namespace {

// K0^2 - (K+K- + K-K+)/2 on the leading t block.
Matrix casimir(const RealizationMatrices& r) {
  Matrix c = matmul(r.k0, r.k0);
  c -= 0.5 * (matmul(r.kp, r.km) + matmul(r.km, r.kp));
  return c;
}

double block_diff(const Matrix& a, const Matrix& b, std::size_t t) {
  double m = 0.0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_SUITE("realization") {
  TEST_CASE("discrete series entries") {
    const auto r = discrete_series(0.25, 3);
    CHECK(r.k0(0, 0) == 0.25);
    CHECK(r.k0(1, 1) == 1.25);
    CHECK(r.k0(2, 2) == 2.25);
    CHECK(r.kp(1, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(r.kp(2, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.km == r.kp.transpose());
    CHECK_THROWS_AS(discrete_series(0.0, 10), Error);
  }

  TEST_CASE("commutation relations and Casimir on the trusted block") {
    for (double k : {0.25, 0.75, 1.0, 2.5}) {
      CAPTURE(k);
      const auto r = discrete_series(k, 60);
      CHECK(algebra_residuals(r).max() <= 1e-11);
      const Matrix c = casimir(r);
      const Matrix expect = (k * (k - 1.0)) * Matrix::identity(60);
      CHECK(block_diff(c, expect, r.trusted) <= 1e-11);
    }
    for (const auto& r : {oscillator_full(40), oscillator_sector(Parity::Odd, 30),
                          multiboson(3, {0.2, 0.5, 0.9}, 45), radial(1.0, 30)})
      CHECK(algebra_residuals(r).max() <= 1e-11);
  }

  TEST_CASE("ladder description matches the matrices") {
    for (const auto& r : {discrete_series(0.75, 20), oscillator_full(21), oscillator_sector(Parity::Even, 20),
                          multiboson(3, {0.25, 0.5, 0.75}, 22)}) {
      REQUIRE(r.level.size() == r.dim);
      for (std::size_t i = 0; i < r.dim; ++i) {
        CHECK(r.k0(i, i) == doctest::Approx(r.level[i] + r.weight[i]).epsilon(1e-15));
        if (i + r.shift < r.dim) {
          const double up = r.kp(i + r.shift, i);
          CHECK(up * up == doctest::Approx((r.level[i] + 1.0) * (r.level[i] + 2.0 * r.weight[i])).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("oscillator constructions") {
    const auto full = oscillator_full(10);
    for (std::size_t n = 0; n < 10; ++n) CHECK(full.k0(n, n) == doctest::Approx((2.0 * n + 1.0) / 4.0));
    // a^2 |2> = sqrt(2)|0>, halved.
    CHECK(full.km(0, 2) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    const auto even = oscillator_sector(Parity::Even, 10);
    CHECK(even.km(0, 1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    const auto ds = discrete_series(0.25, 10);
    CHECK(max_abs_diff(even.k0, ds.k0) <= 1e-14);
    CHECK(max_abs_diff(even.kp, ds.kp) <= 1e-14);
    const auto odd = oscillator_sector(Parity::Odd, 10);
    const auto ds3 = discrete_series(0.75, 10);
    CHECK(max_abs_diff(odd.kp, ds3.kp) <= 1e-14);
  }

  TEST_CASE("multiboson reproduces the oscillator for l = 2") {
    const auto m = multiboson(2, {0.25, 0.75}, 8);
    const auto o = oscillator_full(8);
    CHECK(max_abs_diff(m.k0, o.k0) <= 1e-12);
    CHECK(max_abs_diff(m.kp, o.kp) <= 1e-12);
    CHECK(max_abs_diff(m.km, o.km) <= 1e-12);
    CHECK(m.km(0, 2) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(multiboson(2, {0.25}, 8), Error);
    CHECK_THROWS_AS(multiboson(2, {-0.5, 0.75}, 8), Error);
  }

  TEST_CASE("root-of-unity residue operator") {
    CHECK(std::abs(residue_operator_value(3, 7) - 1.0) <= 1e-12);
    for (int l = 1; l <= 5; ++l)
      for (long n = 0; n < 50; ++n) {
        CAPTURE(l);
        CAPTURE(n);
        CHECK(std::abs(residue_operator_value(l, n) - static_cast<double>(n % l)) <= 1e-12);
      }
  }

  TEST_CASE("radial mapping") {
    CHECK(radial_L(3, 0) == 0.0);
    CHECK(radial_L(2, 1) == 0.5);
    CHECK(radial(0.0, 10).k0(0, 0) == 0.75);
    CHECK(radial(1.0, 10).k0(0, 0) == 1.25);
    for (double L : {0.0, 1.0, 2.0}) {
      CAPTURE(L);
      const auto t = radial_k0_operator(L, 1.0, 10.0, 4000);
      CHECK(std::abs(tridiagonal_lowest(t, 1)[0] - (2.0 * L + 3.0) / 4.0) <= 1e-3);
    }
  }

  TEST_CASE("conformal mapping") {
    const auto c = conformal(0.75, 1.0, 1.0, 20);
    CHECK(c.params.alpha == 0.25);
    CHECK(c.params.beta == -0.25);
    CHECK(c.big_omega == std::sqrt(1.25));
    CHECK(c.big_omega * c.big_omega == doctest::Approx(c.params.omega * c.params.omega + 0.25));
    CHECK_FALSE(z_admissible(c.params, 0.44));
    CHECK(z_admissible(c.params, 0.45));
    const auto h = h_element(c.params, 0.6);
    CHECK(std::abs(h.cm - h.cp) <= 1e-14);
  }

  TEST_CASE("materialize") {
    const auto r = discrete_series(0.25, 30);
    CHECK(max_abs_diff(materialize(observable_O(0.0), r), 2.0 * r.k0) == 0.0);
    const auto h = materialize({2.0, 0.4, 0.2}, r);
    CHECK_FALSE(h == h.transpose());
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        if (i > j + 1 || j > i + 1) CHECK(h(i, j) == 0.0);
    const AlgebraElement x{1.0, 2.0, 3.0}, y{-0.5, 0.25, 4.0};
    CHECK(max_abs_diff(materialize(x + y, r), materialize(x, r) + materialize(y, r)) <= 1e-13);
    CHECK_THROWS_AS(materialize({cplx(0.0, 1.0), 0.0, 0.0}, r), Error);
  }

  TEST_CASE("exp_element") {
    const auto r = discrete_series(0.25, 40);
    CHECK(max_abs_diff(exp_element({}, r), Matrix::identity(40)) == 0.0);
    const double eps = 0.2;
    const auto d = exp_element(AlgebraElement::metric_exponent(eps, 0.0), r);
    for (std::size_t n = 0; n < 40; ++n) CHECK(d(n, n) == doctest::Approx(std::exp(2 * eps * (n + 0.25))).epsilon(1e-14));
    // Agrees with the spectral exponential where both are accurate.
    const auto a = AlgebraElement::metric_exponent(0.1, 0.03);
    const auto big = discrete_series(0.25, 160);
    const Matrix spectral = exp_symmetric(materialize(a, big), 1.0);
    const Matrix direct = exp_element(a, big);
    CHECK(relative_block_residual(spectral, direct, 30) <= 1e-12);
    CHECK(direct == direct.transpose());
    CHECK_THROWS_AS(exp_element({0.2, 0.1, 0.3}, r), Error);
  }

  TEST_CASE("descriptors") {
    CHECK(std::get<DiscreteSeriesKind>(parse_realization("discrete:k=0.75").kind).k == 0.75);
    CHECK(std::get<OscillatorSectorKind>(parse_realization("oscillator:parity=odd").kind).parity == Parity::Odd);
    CHECK(std::holds_alternative<OscillatorFullKind>(parse_realization("oscillator").kind));
    const auto m = std::get<MultibosonKind>(parse_realization("multiboson:l=2").kind);
    CHECK(m.residues == std::vector<double>{0.25, 0.75});
    CHECK(std::get<RadialKind>(parse_realization("radial:d=3,l=1").kind).L == 1.0);
    CHECK(parse_realization("conformal:k=0.75,c=1").conformal_c.value() == 1.0);
    CHECK_THROWS_AS(parse_realization("bogus"), Error);
    CHECK_THROWS_AS(parse_realization("discrete:k=abc"), Error);
    CHECK(lowest_weights(OscillatorFullKind{}) == std::vector<double>{0.25, 0.75});
    CHECK(describe(DiscreteSeriesKind{0.25}).find("discrete") != std::string::npos);
  }
}
