#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lorlab/causal.hpp"
#include "lorlab/discrete.hpp"
#include "lorlab/error.hpp"

using namespace lorlab;

namespace {

// Composite Simpson on n panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Longest path on a causal lattice: rows of constant t, columns of constant x,
// edges to any later row within the cone, weighted by the midpoint g-length of
// the straight segment.
double lattice_longest_path(const MetricProfile& profile, SpacetimePoint p, SpacetimePoint q,
                            int rows, double x_lo, double x_hi, int max_jump) {
  const double dt = (q.t - p.t) / rows;
  const int cols = rows + 1;
  const double dx = (x_hi - x_lo) / (cols - 1);
  auto col = [&](double x) { return static_cast<int>(std::lround((x - x_lo) / dx)); };
  std::vector<double> best(static_cast<std::size_t>((rows + 1) * cols), -1.0);
  best[col(p.x)] = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double base = best[i * cols + j];
      if (base < 0.0) continue;
      for (int r = 1; r <= max_jump && i + r <= rows; ++r) {
        const auto m = profile.eval(p.t + (i + 0.5 * r) * dt);
        for (int k = -r; k <= r; ++k) {
          if (j + k < 0 || j + k >= cols) continue;
          const double sq = m.a * (r * dt) * (r * dt) - m.b * (k * dx) * (k * dx);
          if (sq < 0.0) continue;
          double& dst = best[(i + r) * cols + j + k];
          dst = std::max(dst, base + std::sqrt(sq));
        }
      }
    }
  }
  return best[rows * cols + col(q.x)];
}

}  // namespace

TEST(CausallyRelated, Examples) {
  const auto& mk = builtin_profile("minkowski");
  auto v = causally_related(mk, {0, 0}, {2, 1});
  EXPECT_EQ(v.relation, Relation::Chronological);
  EXPECT_NEAR(v.margin, 1.0, 1e-14);
  v = causally_related(mk, {0, 0}, {1, 1});
  EXPECT_EQ(v.relation, Relation::CausalBoundary);
  EXPECT_NEAR(v.margin, 0.0, 1e-14);
  v = causally_related(builtin_profile("warpb"), {0, 0}, {1, 0.8});
  EXPECT_EQ(v.relation, Relation::Chronological);
  EXPECT_NEAR(v.margin, std::asinh(1.0) - 0.8, 1e-10);
  EXPECT_EQ(causally_related(mk, {0, 0}, {1, 2}).relation, Relation::Unrelated);
  EXPECT_EQ(causally_related(mk, {1, 0}, {0, 0}).relation, Relation::Unrelated);
}

TEST(ConeBoundary, Examples) {
  const double one[] = {1.0};
  auto s = cone_boundary(builtin_profile("minkowski"), {0, 0}, one);
  EXPECT_NEAR(s[0].x_left, -1.0, 1e-14);
  EXPECT_NEAR(s[0].x_right, 1.0, 1e-14);
  s = cone_boundary(builtin_profile("exp2t"), {0, 0}, one);
  EXPECT_NEAR(s[0].x_right, std::exp(1.0) - 1.0, 1e-10);
  const double near_edge[] = {1.0 - 1e-9};
  s = cone_boundary(builtin_profile("strip01"), {0.5, 0}, near_edge);
  EXPECT_NEAR(s[0].x_right, 0.5, 1e-8);
  const double past[] = {-1.0};
  s = cone_boundary(builtin_profile("minkowski"), {0, 0}, past);
  EXPECT_NEAR(s[0].x_right, 1.0, 1e-14);
  const double mixed[] = {-1.0, 1.0};
  EXPECT_THROW(cone_boundary(builtin_profile("minkowski"), {0, 0}, mixed), Error);
}

TEST(MinkowskiReduce, Examples) {
  const auto r = minkowski_reduce(builtin_profile("minkowski"), {0.3, -2});
  EXPECT_NEAR(r.t, 0.3, 1e-14);
  EXPECT_EQ(r.x, -2.0);
  EXPECT_NEAR(minkowski_reduce(builtin_profile("exp2t"), {1, 0}).t, std::exp(1.0) - 1, 1e-12);
  // Oracle: substitute u = w^2 to remove the u^{3/2} derivative singularity.
  const double oracle =
      simpson([](double w) { return 2 * w * std::sqrt(1 + w * w * w); }, 0.0, 1.0, 4000);
  const auto c = minkowski_reduce(builtin_profile("c1power"), {1, 2});
  EXPECT_NEAR(c.t, oracle, 1e-10);
  EXPECT_EQ(c.x, 2.0);
  try {
    minkowski_reduce(builtin_profile("warpb"), {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotReducible);
  }
  EXPECT_EQ(reduction_origin(builtin_profile("strip01")), 0.5);
}

TEST(LorentzianDistance, FlatInterval) {
  const auto r = lorentzian_distance(builtin_profile("minkowski"), {0, 0}, {2, 1});
  EXPECT_NEAR(r.value, std::sqrt(3.0), 1e-12);
  EXPECT_EQ(r.method, DistanceMethod::Reduction);
  ASSERT_TRUE(r.maximizer.has_value());
  EXPECT_NEAR(r.maximizer->endpoint().t, 2.0, 1e-9);
  EXPECT_NEAR(r.maximizer->endpoint().x, 1.0, 1e-9);
}

TEST(LorentzianDistance, ExponentialVertical) {
  const auto r = lorentzian_distance(builtin_profile("exp2t"), {0, 0}, {std::log(2.0), 0});
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  ASSERT_TRUE(r.initial_velocity.has_value());
  EXPECT_NEAR(r.initial_velocity->xi0, 0.0, 1e-12);
}

TEST(LorentzianDistance, ZeroOffChronological) {
  const auto& mk = builtin_profile("minkowski");
  EXPECT_EQ(time_separation(mk, {0, 0}, {1, 1}), 0.0);
  EXPECT_EQ(time_separation(mk, {0, 0}, {1, 3}), 0.0);
  EXPECT_EQ(time_separation(mk, {0, 0}, {-1, 0}), 0.0);
  const auto r = lorentzian_distance(mk, {0, 0}, {1, 1});
  EXPECT_EQ(r.value, 0.0);
  ASSERT_TRUE(r.maximizer.has_value());  // null connecting segment
}

TEST(LorentzianDistance, ShootingMatchesReductionWhenBIsOne) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const auto* name : {"minkowski", "exp2t", "c1power"}) {
    const auto& p = builtin_profile(name);
    for (int i = 0; i < 20; ++i) {
      const SpacetimePoint a{-1 + U(rng), U(rng)};
      const double dt = 0.1 + U(rng);
      const double w = cone_integral(p, a.t, a.t + dt);
      const SpacetimePoint b{a.t + dt, a.x + 0.95 * w * (2 * U(rng) - 1)};
      DistanceOptions red, sho;
      red.method = DistanceMethod::Reduction;
      sho.method = DistanceMethod::Shooting;
      red.with_maximizer = sho.with_maximizer = false;
      const double tr = lorentzian_distance(p, a, b, red).value;
      const double ts = lorentzian_distance(p, a, b, sho).value;
      EXPECT_NEAR(tr, ts, 1e-8 * (1 + tr)) << name;
    }
  }
}

TEST(LorentzianDistance, WarpedLatticeOracle) {
  const auto& w = builtin_profile("warpb");
  for (const SpacetimePoint q : {SpacetimePoint{1, 0}, SpacetimePoint{1, 0.5}}) {
    const double shooting = time_separation(w, {0, 0}, q);
    const double lattice = lattice_longest_path(w, {0, 0}, q, 400, -0.5, 1.0, 8);
    EXPECT_NEAR(shooting, lattice, 2e-2);
    // A lattice path is a causal curve, so it cannot beat the supremum.
    EXPECT_LE(lattice, shooting + 1e-9);
  }
}

TEST(LorentzianDistance, MaximizerReachesTarget) {
  const auto r = lorentzian_distance(builtin_profile("warpb"), {0, 0}, {1.5, 0.7});
  ASSERT_TRUE(r.maximizer.has_value());
  EXPECT_EQ(r.method, DistanceMethod::Shooting);
  EXPECT_NEAR(r.maximizer->endpoint().t, 1.5, 1e-9);
  EXPECT_NEAR(r.maximizer->endpoint().x, 0.7, 1e-9);
  EXPECT_NEAR(r.maximizer->samples.back().s, r.value, 1e-9);
}

TEST(LorentzianDistance, ReductionRefusedForWarpedB) {
  DistanceOptions o;
  o.method = DistanceMethod::Reduction;
  EXPECT_THROW(lorentzian_distance(builtin_profile("warpb"), {0, 0}, {1, 0}, o), Error);
}

TEST(TauLengthChain, Examples) {
  const auto& mk = builtin_profile("minkowski");
  auto s = build_space(mk, {{0, 0}, {1, 0}, {2, 0}});
  std::vector<std::size_t> chain{0, 1, 2};
  EXPECT_NEAR(tau_length_chain(s.taumat, s.causal, chain), 2.0, 1e-14);
  s = build_space(mk, {{0, 0}, {1, 0.9}, {2, 0}});
  EXPECT_NEAR(tau_length_chain(s.taumat, s.causal, chain), 2 * std::sqrt(0.19), 1e-14);
  std::vector<std::size_t> pair{0, 2};
  EXPECT_EQ(tau_length_chain(s.taumat, s.causal, pair), s.taumat(0, 2));
  std::vector<std::size_t> broken{1, 0};
  try {
    tau_length_chain(s.taumat, s.causal, broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAChain);
  }
}

TEST(DLength, Examples) {
  const SpacetimePoint seg[] = {{0, 0}, {1, 0}};
  EXPECT_EQ(d_length(seg), 1.0);
  const SpacetimePoint bent[] = {{0, 0}, {1, 1}, {2, 0}};
  EXPECT_NEAR(d_length(bent), 2 * std::sqrt(2.0), 1e-15);
  std::vector<SpacetimePoint> arc;
  for (int i = 0; i < 100; ++i) {
    const double th = i / 99.0;
    arc.push_back({std::cos(th), std::sin(th)});
  }
  EXPECT_NEAR(d_length(arc), 1.0, 1e-3);
  const SpacetimePoint single[] = {{0, 0}};
  EXPECT_THROW(d_length(single), Error);
}
