#include <cmath>

#include <gtest/gtest.h>

#include "lorlab/quadrature.hpp"

using namespace lorlab;

TEST(Quadrature, Polynomial) {
  const auto r = quad::integrate([](double t) { return 3 * t * t; }, 0.0, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 8.0, 1e-13);
}

TEST(Quadrature, ReversedBoundsFlipSign) {
  const auto r = quad::integrate([](double t) { return std::exp(t); }, 1.0, 0.0);
  EXPECT_NEAR(r.value, -(std::exp(1.0) - 1.0), 1e-13);
}

TEST(Quadrature, KinkWithBreakpoint) {
  // int_{-1}^{2} |t|^{3/2} = 2/5 (1 + 2^{5/2})
  const double bp[] = {0.0};
  const auto r = quad::integrate([](double t) { return std::pow(std::abs(t), 1.5); }, -1.0, 2.0, bp);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.4 * (1.0 + std::pow(2.0, 2.5)), 1e-10);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
  // int_0^1 1/sqrt(1 - t) = 2; the endpoint itself is never evaluated, and the
  // refinement gives up before nodes collide with it.
  const auto r = quad::integrate([](double t) { return 1.0 / std::sqrt(1.0 - t); }, 0.0, 1.0);
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_NEAR(r.value, 2.0, 1e-5);
}

TEST(Quadrature, EmptyInterval) {
  EXPECT_EQ(quad::integrate([](double) { return 1.0; }, 0.5, 0.5).value, 0.0);
}
