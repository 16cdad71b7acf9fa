#include <limits>

#include "lorlab/simd/kernels.hpp"

namespace lorlab::simd::scalar {

std::size_t first_and_not(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] != 0 && b[k] == 0) return k;
  }
  return n;
}

MaxExcess max_excess(double base, const double* add, const double* sub, const std::uint8_t* mask,
                     std::size_t n) noexcept {
  MaxExcess best{-std::numeric_limits<double>::infinity(), n};
  for (std::size_t k = 0; k < n; ++k) {
    if (mask[k] == 0) continue;
    const double v = (base + add[k]) - sub[k];
    if (v > best.value) best = {v, k};
  }
  return best;
}

}  // namespace lorlab::simd::scalar
