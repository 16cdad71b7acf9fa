#include <cstdlib>
#include <string_view>

#include "lorlab/simd/kernels.hpp"

namespace lorlab::simd {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::first_and_not, &scalar::max_excess};

#if defined(LORLAB_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::first_and_not, &avx2::max_excess};
#endif

}  // namespace

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(LORLAB_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) noexcept {
#if defined(LORLAB_HAVE_AVX2_TU)
  if (isa == Isa::Avx2 && available(Isa::Avx2)) return kAvx2;
#else
  (void)isa;
#endif
  return kScalar;
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("LORLAB_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return kScalar;
    return table(Isa::Avx2);
  }();
  return chosen;
}

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace lorlab::simd
