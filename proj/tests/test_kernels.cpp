#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "su11/kernels.hpp"

using namespace su11;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("active table is one of the built variants") {
    const auto& a = kernels::active();
    CHECK((a.name == "scalar" || a.name == "avx2"));
    if (!kernels::host_supports_avx2()) CHECK(a.name == "scalar");
  }

  TEST_CASE("avx2 matches scalar on every length and tail") {
    const auto* simd = kernels::avx2();
    if (simd == nullptr) {
      MESSAGE("AVX2 variant unavailable; equivalence not exercised");
      return;
    }
    const auto& ref = kernels::scalar();
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 257u, 1000u}) {
      CAPTURE(n);
      auto x = random_vector(rng, n);
      auto y = random_vector(rng, n);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
      CHECK(std::abs(ref.dot(x.data(), y.data(), n) - simd->dot(x.data(), y.data(), n)) <= 1e-14 * (scale + 1.0));
      CHECK(std::abs(ref.sqdist(x.data(), y.data(), n) - simd->sqdist(x.data(), y.data(), n)) <=
            1e-14 * (4.0 * scale + 16.0 * n + 1.0));

      auto y1 = y, y2 = y;
      ref.axpy(0.37, x.data(), y1.data(), n);
      simd->axpy(0.37, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

      auto x1 = x, x2 = x, z1 = y, z2 = y;
      const double c = std::cos(0.3), s = std::sin(0.3);
      ref.rot(x1.data(), z1.data(), c, s, n);
      simd->rot(x2.data(), z2.data(), c, s, n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(x1[i] - x2[i]) <= 1e-15 * 4.0);
        CHECK(std::abs(z1[i] - z2[i]) <= 1e-15 * 4.0);
      }
    }
  }

  TEST_CASE("scalar reference on small inputs") {
    const auto& k = kernels::scalar();
    const double x[] = {1.0, 2.0, 3.0};
    const double y[] = {4.0, -5.0, 6.0};
    CHECK(k.dot(x, y, 3) == 12.0);
    CHECK(k.sqdist(x, y, 3) == 9.0 + 49.0 + 9.0);
    double z[] = {1.0, 1.0, 1.0};
    k.axpy(2.0, x, z, 3);
    CHECK(z[2] == 7.0);
  }
}
