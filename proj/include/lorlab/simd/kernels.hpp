#pragma once

// Row-scan kernels behind the discrete axiom checks. Each kernel has a scalar
// reference version and an AVX2 version; active() picks one at runtime. The two
// must agree bit-for-bit, including the reported index.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lorlab::simd {

enum class Isa { Scalar, Avx2 };

struct MaxExcess {
  double value;       // -inf when no entry is selected
  std::size_t index;  // first index attaining value; n when none
};

/// First k < n with a[k] != 0 and b[k] == 0, or n.
using FirstAndNotFn = std::size_t (*)(const std::uint8_t* a, const std::uint8_t* b,
                                      std::size_t n) noexcept;

/// max over k with mask[k] != 0 of (base + add[k]) - sub[k].
using MaxExcessFn = MaxExcess (*)(double base, const double* add, const double* sub,
                                  const std::uint8_t* mask, std::size_t n) noexcept;

struct KernelTable {
  Isa isa;
  FirstAndNotFn first_and_not;
  MaxExcessFn max_excess;
};

namespace scalar {
std::size_t first_and_not(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) noexcept;
MaxExcess max_excess(double base, const double* add, const double* sub, const std::uint8_t* mask,
                     std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
std::size_t first_and_not(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) noexcept;
MaxExcess max_excess(double base, const double* add, const double* sub, const std::uint8_t* mask,
                     std::size_t n) noexcept;
}  // namespace avx2

/// True when the ISA was compiled in and the running CPU supports it.
bool available(Isa isa) noexcept;

/// Table for a specific ISA; falls back to scalar when unavailable.
const KernelTable& table(Isa isa) noexcept;

/// Best available table, unless LORLAB_SIMD=scalar is set in the environment.
const KernelTable& active() noexcept;

std::string_view to_string(Isa isa) noexcept;

}  // namespace lorlab::simd
