#include <cstdlib>
#include <string_view>

#include "su11/kernels.hpp"

namespace su11::kernels {

#if defined(SU11_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table();
}
#endif

bool host_supports_avx2() {
#if defined(SU11_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* avx2() {
#if defined(SU11_HAVE_AVX2)
  if (host_supports_avx2()) return &detail::avx2_table();
#endif
  return nullptr;
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("SU11_KERNELS");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return scalar();
  if (const KernelTable* t = avx2()) return *t;
  return scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace su11::kernels
