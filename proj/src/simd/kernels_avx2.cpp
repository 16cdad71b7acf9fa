// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstring>
#include <limits>

#include "lorlab/simd/kernels.hpp"

namespace lorlab::simd::avx2 {

std::size_t first_and_not(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) noexcept {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 32 <= n; k += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    // a != 0 and b == 0
    const __m256i hit = _mm256_andnot_si256(_mm256_cmpeq_epi8(va, zero), _mm256_cmpeq_epi8(vb, zero));
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(hit));
    if (bits != 0) return k + static_cast<std::size_t>(__builtin_ctz(bits));
  }
  for (; k < n; ++k) {
    if (a[k] != 0 && b[k] == 0) return k;
  }
  return n;
}

MaxExcess max_excess(double base, const double* add, const double* sub, const std::uint8_t* mask,
                     std::size_t n) noexcept {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const __m256d vbase = _mm256_set1_pd(base);
  const __m256d vneg = _mm256_set1_pd(kNegInf);
  const __m256i izero = _mm256_setzero_si256();
  __m256d vmax = vneg;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    std::int32_t packed;
    std::memcpy(&packed, mask + k, sizeof packed);
    const __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256d sel = _mm256_castsi256_pd(_mm256_cmpgt_epi64(m64, izero));
    const __m256d v = _mm256_sub_pd(_mm256_add_pd(vbase, _mm256_loadu_pd(add + k)),
                                    _mm256_loadu_pd(sub + k));
    vmax = _mm256_max_pd(vmax, _mm256_blendv_pd(vneg, v, sel));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double best = lanes[0];
  for (int i = 1; i < 4; ++i) best = lanes[i] > best ? lanes[i] : best;
  for (std::size_t j = k; j < n; ++j) {
    if (mask[j] == 0) continue;
    const double v = (base + add[j]) - sub[j];
    if (v > best) best = v;
  }
  if (best == kNegInf) return {kNegInf, n};
  // Locate the first index attaining the maximum; same arithmetic as above.
  for (std::size_t j = 0; j < n; ++j) {
    if (mask[j] != 0 && (base + add[j]) - sub[j] == best) return {best, j};
  }
  return {best, n};
}

}  // namespace lorlab::simd::avx2
