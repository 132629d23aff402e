#pragma once

// Data-parallel inner loops used by the dense linear algebra layer.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant compiled in its own translation unit. The variant is chosen once per
// process from CPUID; SU11_KERNELS=scalar|avx2 overrides the choice.

#include <cstddef>
#include <string_view>

namespace su11::kernels {

struct KernelTable {
  std::string_view name;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y), a plane rotation applied elementwise
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
  // sum_i (x[i] - y[i])^2
  double (*sqdist)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar();

/// Null when the build or the host lacks AVX2/FMA.
const KernelTable* avx2();

/// The table selected for this process.
const KernelTable& active();

bool host_supports_avx2();

}  // namespace su11::kernels
