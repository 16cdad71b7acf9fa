#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lorlab/simd/kernels.hpp"

using namespace lorlab;

namespace {

bool have_avx2() { return simd::available(simd::Isa::Avx2); }

}  // namespace

TEST(Kernels, ScalarReference) {
  const std::uint8_t a[] = {0, 1, 1, 0, 1};
  const std::uint8_t b[] = {0, 1, 0, 0, 0};
  EXPECT_EQ(simd::scalar::first_and_not(a, b, 5), 2u);
  EXPECT_EQ(simd::scalar::first_and_not(a, a, 5), 5u);
  const double add[] = {1, 5, 2};
  const double sub[] = {0, 1, 0};
  const std::uint8_t mask[] = {1, 0, 1};
  const auto m = simd::scalar::max_excess(1.0, add, sub, mask, 3);
  EXPECT_EQ(m.value, 3.0);
  EXPECT_EQ(m.index, 2u);
  const std::uint8_t none[] = {0, 0, 0};
  const auto e = simd::scalar::max_excess(1.0, add, sub, none, 3);
  EXPECT_EQ(e.index, 3u);
  EXPECT_TRUE(std::isinf(e.value) && e.value < 0);
}

TEST(Kernels, Avx2MatchesScalarOnRandomRows) {
  if (!have_avx2()) GTEST_SKIP() << "AVX2 not available";
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (std::size_t n = 0; n < 140; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::uint8_t> a(n), b(n), mask(n);
      std::vector<double> add(n), sub(n);
      const double density = (trial % 5 + 1) / 6.0;
      for (std::size_t k = 0; k < n; ++k) {
        a[k] = (U(rng) + 1) / 2 < density;
        b[k] = (U(rng) + 1) / 2 < 0.9 || !a[k];
        mask[k] = (U(rng) + 1) / 2 < density;
        // Coarse values make exact ties common, which exercises first-index selection.
        add[k] = std::round(U(rng) * 4) / 4;
        sub[k] = std::round(U(rng) * 4) / 4;
      }
      EXPECT_EQ(simd::avx2::first_and_not(a.data(), b.data(), n),
                simd::scalar::first_and_not(a.data(), b.data(), n));
      const double base = U(rng);
      const auto s = simd::scalar::max_excess(base, add.data(), sub.data(), mask.data(), n);
      const auto v = simd::avx2::max_excess(base, add.data(), sub.data(), mask.data(), n);
      EXPECT_EQ(s.index, v.index) << "n=" << n;
      EXPECT_EQ(s.value, v.value) << "n=" << n;
    }
  }
}

TEST(Kernels, Avx2HandlesNonzeroTruthBytes) {
  if (!have_avx2()) GTEST_SKIP() << "AVX2 not available";
  std::vector<std::uint8_t> a(37, 0), b(37, 0xff);
  a[33] = 0x80;
  b[33] = 0;
  EXPECT_EQ(simd::avx2::first_and_not(a.data(), b.data(), 37), 33u);
  std::vector<double> add(37, 0.0), sub(37, 0.0);
  std::vector<std::uint8_t> mask(37, 0);
  mask[20] = 0x80;
  add[20] = 2.0;
  const auto m = simd::avx2::max_excess(0.5, add.data(), sub.data(), mask.data(), 37);
  EXPECT_EQ(m.index, 20u);
  EXPECT_EQ(m.value, 2.5);
}

TEST(Kernels, DispatchHonoursAvailability) {
  EXPECT_EQ(simd::table(simd::Isa::Scalar).isa, simd::Isa::Scalar);
  const auto& t = simd::table(simd::Isa::Avx2);
  EXPECT_EQ(t.isa, have_avx2() ? simd::Isa::Avx2 : simd::Isa::Scalar);
}
