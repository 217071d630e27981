#include <cstdlib>
#include <string_view>

#include "catsim/kernels.hpp"

namespace catsim::kernels {

#if defined(CATSIM_HAVE_AVX2)
const KernelSet& avx2_kernel_set();
#endif

const KernelSet* avx2_kernels() {
#if defined(CATSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_kernel_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* env = std::getenv("CATSIM_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelSet* simd = avx2_kernels()) return *simd;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace catsim::kernels
