#include "gordon/simd/wave_kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace gordon::simd {

bool isa_available(Isa isa) noexcept {
  switch (isa) {
  case Isa::scalar: return true;
  case Isa::avx2:
#if defined(GORDON_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) throw std::runtime_error("requested SIMD kernels are not available");
#if defined(GORDON_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = [&]() -> const KernelTable& {
    if (const char* env = std::getenv("GORDON_SIMD"); env && std::string_view(env) == "scalar")
      return detail::scalar_table;
    return isa_available(Isa::avx2) ? kernels(Isa::avx2) : detail::scalar_table;
  }();
  return table;
}

} // namespace gordon::simd
