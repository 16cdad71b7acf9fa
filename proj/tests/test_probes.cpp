#include <cmath>

#include <gtest/gtest.h>

#include "lorlab/causal.hpp"
#include "lorlab/error.hpp"
#include "lorlab/probes.hpp"

using namespace lorlab;

TEST(FiniteCompactness, FlatHyperbolaCap) {
  const auto r = probe_finite_compactness(builtin_profile("minkowski"), {0, 0}, {1, 0}, 5.0);
  EXPECT_TRUE(r.report.holds());
  EXPECT_TRUE(r.region.bounded);
  EXPECT_TRUE(r.region.closed_in_domain);
  // The far corner of K1 is the cone edge of q meeting T = 5: t = 13.
  EXPECT_NEAR(r.region.t_end, 13.0, 1e-9);
  ASSERT_EQ(r.region.slices.size(), 33u);
  // On each slice the gap is where t^2 - x^2 > 25.
  const auto& mid = r.region.slices[20];
  if (mid.has_gap && std::isfinite(mid.gap_right)) {
    EXPECT_NEAR(mid.gap_right, std::sqrt(mid.t * mid.t - 25.0), 1e-8);
  }
}

TEST(FiniteCompactness, StripEscapingSequence) {
  const auto& strip = builtin_profile("strip01");
  const auto r = probe_finite_compactness(strip, {0.1, 0}, {0.2, 0}, 5.0);
  EXPECT_FALSE(r.report.holds());
  EXPECT_EQ(r.report.reason, "cut_by_boundary");
  EXPECT_FALSE(r.region.closed_in_domain);
  const auto& seq = r.report.sequence;
  ASSERT_EQ(seq.size(), 20u);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(seq[i].x, 0.0);
    if (i) EXPECT_GT(seq[i].t, seq[i - 1].t);
    // Replay: every term lies in K1.
    EXPECT_LE(time_separation(strip, {0.1, 0}, seq[i]), 5.0);
    EXPECT_NE(causally_related(strip, {0.2, 0}, seq[i]).relation, Relation::Unrelated);
  }
  EXPECT_NEAR(seq.back().t, 1.0, 1e-5);
  EXPECT_LE(r.report.value("sup_tau"), 0.9 + 1e-12);
}

TEST(FiniteCompactness, ExponentialCap) {
  const auto& e = builtin_profile("exp2t");
  const auto r = probe_finite_compactness(e, {0, 0}, {0.1, 0}, 1.0);
  EXPECT_TRUE(r.report.holds());
  EXPECT_TRUE(std::isfinite(r.region.t_end));
  // The cap is where the smaller cone edge of q reaches T = 1.
  const auto edge = cone_boundary(e, {0.1, 0}, std::vector<double>{r.region.t_end})[0];
  EXPECT_NEAR(time_separation(e, {0, 0}, {edge.t, edge.x_right}), 1.0, 1e-8);
}

TEST(FiniteCompactness, Contracts) {
  const auto& mk = builtin_profile("minkowski");
  try {
    probe_finite_compactness(mk, {0, 0}, {1, 1}, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotChronological);
  }
  EXPECT_THROW(probe_finite_compactness(mk, {0, 0}, {1, 0}, 0.0), Error);
}

TEST(FiniteCompactness, RegionsNestInTheBound) {
  const auto& w = builtin_profile("warpb");
  const SpacetimePoint p{0, 0}, q{0.5, 0.1};
  for (double t : {0.6, 1.0, 1.5}) {
    const auto small = k1_slice(w, p, q, 1.0, t);
    const auto large = k1_slice(w, p, q, 1.4, t);
    for (int k = 0; k <= 40; ++k) {
      const double x = small.cone_left + (small.cone_right - small.cone_left) * k / 40.0;
      if (small.contains(x)) EXPECT_TRUE(large.contains(x)) << "t=" << t << " x=" << x;
    }
  }
}

TEST(ConditionA, FlatVerticalDiverges) {
  const auto r = probe_condition_a(builtin_profile("minkowski"), {0, 0}, {1, 0}, {1, 0}, {1e3});
  EXPECT_TRUE(r.report.holds());
  ASSERT_EQ(r.outcome.crossings.size(), 1u);
  EXPECT_NEAR(r.outcome.crossings[0].t_star, 1e3, 1e-6);
  EXPECT_NEAR(r.outcome.crossings[0].s_star, 1e3 - 1, 1e-6);
}

TEST(ConditionA, FlatNullRayDiverges) {
  const auto r = probe_condition_a(builtin_profile("minkowski"), {0, 0}, {1, 0}, {1, 1}, {10, 100});
  EXPECT_TRUE(r.report.holds());
  // T(p, (t, t - 1)) = sqrt(2t - 1).
  EXPECT_NEAR(r.outcome.crossings[0].t_star, 50.5, 1e-6);
}

TEST(ConditionA, StripCapped) {
  const auto r = probe_condition_a(builtin_profile("strip01"), {0.1, 0}, {0.2, 0}, {1, 0}, {0.5, 2.0});
  EXPECT_FALSE(r.report.holds());
  EXPECT_EQ(r.report.reason, "capped_at_boundary");
  EXPECT_TRUE(r.outcome.inextendible);
  EXPECT_NEAR(r.outcome.max_param, 0.8, 1e-12);
  EXPECT_LE(r.outcome.sup_tau, 0.9 + 1e-6);
  EXPECT_TRUE(r.outcome.crossings[0].diverged);
  EXPECT_NEAR(r.outcome.crossings[0].t_star, 0.6, 1e-9);
  EXPECT_FALSE(r.outcome.crossings[1].diverged);
}

TEST(ConditionA, MonotoneInTheBound) {
  const auto r = probe_condition_a(builtin_profile("warpb"), {0, 0}, {0.5, 0.1}, {1, 0.3},
                                   {0.8, 1.5, 3.0, 6.0});
  ASSERT_TRUE(r.report.holds());
  for (std::size_t i = 1; i < r.outcome.crossings.size(); ++i) {
    EXPECT_LE(r.outcome.crossings[i - 1].t_star, r.outcome.crossings[i].t_star);
    EXPECT_LE(r.outcome.crossings[i - 1].s_star, r.outcome.crossings[i].s_star);
  }
}

TEST(TimelikeCauchy, FlatConverges) {
  std::vector<SpacetimePoint> seq;
  std::vector<double> bounds;
  for (int n = 1; n <= 30; ++n) {
    seq.push_back({1 - std::ldexp(1.0, -n), 0});
    bounds.push_back(2 * std::ldexp(1.0, -n));
  }
  const auto r = probe_timelike_cauchy(builtin_profile("minkowski"), seq, bounds);
  EXPECT_TRUE(r.report.holds());
  EXPECT_NEAR(r.limit.t, 1.0, 1e-9);
  EXPECT_EQ(r.limit.x, 0.0);

  const auto s = probe_timelike_cauchy(builtin_profile("strip01"), seq, bounds);
  EXPECT_FALSE(s.report.holds());
  EXPECT_EQ(s.report.reason, "limit_on_missing_boundary");
  EXPECT_NEAR(s.limit.t, 1.0, 1e-9);
}

TEST(TimelikeCauchy, PremiseViolations) {
  const auto& mk = builtin_profile("minkowski");
  auto kind = [&](std::vector<SpacetimePoint> seq, std::vector<double> b) {
    try {
      probe_timelike_cauchy(mk, seq, b);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Usage;
  };
  // Not chronologically increasing.
  EXPECT_EQ(kind({{0, 0}, {1, 0}, {1.5, 1}, {1.7, 1}}, {4, 2, 1, 0.5}), ErrorKind::PremiseViolated);
  // Gap larger than its bound.
  EXPECT_EQ(kind({{0, 0}, {1, 0}, {1.5, 0}}, {0.5, 0.5, 0.1}), ErrorKind::PremiseViolated);
  // Bounds that do not decrease.
  EXPECT_EQ(kind({{0, 0}, {0.1, 0}, {0.2, 0}}, {1, 1, 1}), ErrorKind::PremiseViolated);
  EXPECT_EQ(kind({{0, 0}, {1, 0}}, {1, 1}), ErrorKind::PreconditionViolated);
}

TEST(TimelikeCauchy, DivergentTail) {
  std::vector<SpacetimePoint> seq;
  std::vector<double> bounds;
  for (int n = 0; n < 8; ++n) {
    seq.push_back({static_cast<double>(n), 0});
    bounds.push_back(100.0 - n);
  }
  const auto r = probe_timelike_cauchy(builtin_profile("minkowski"), seq, bounds);
  EXPECT_FALSE(r.report.holds());
  EXPECT_EQ(r.report.reason, "non_convergent_tail");
}

TEST(ImplicationReport, CatalogConsistency) {
  for (const auto& p : builtin_catalog()) {
    const auto r = implication_report(p, default_implication_config(p));
    EXPECT_TRUE(r.consistent) << p.name() << ": " << r.note;
    EXPECT_EQ(r.finite_compactness.report.holds(), p.name() != "strip01") << p.name();
  }
}

TEST(ImplicationReport, WitnessReplay) {
  const auto& strip = builtin_profile("strip01");
  const auto cfg = default_implication_config(strip);
  const auto r = implication_report(strip, cfg);
  // Condition A witness: points on the vertical geodesic with tau bounded by sup_tau.
  const auto& ca = r.condition_a.front();
  for (const auto& x : ca.report.sequence) {
    EXPECT_LE(time_separation(strip, cfg.p, x), ca.outcome.sup_tau + 1e-7);
  }
  // Timelike Cauchy witness: the tail approaches the missing slice.
  const auto& tc = r.timelike_cauchy.report;
  ASSERT_FALSE(tc.sequence.empty());
  EXPECT_NEAR(tc.value("limit_t"), 1.0, 1e-7);
}

TEST(Record, KeyValueLines) {
  ProbeReport r;
  r.condition = Condition::ConditionA;
  r.verdict = Verdict::FailsWithWitness;
  r.reason = "capped_at_boundary";
  r.values = {{"sup_tau", 0.9}};
  r.sequence = {{0.5, 0}};
  EXPECT_EQ(to_record(r),
            "condition: condition_a\nverdict: fails_with_witness\nreason: capped_at_boundary\n"
            "sup_tau: 0.90000000000000002\nsequence[0]: 0.5, 0\n");
  EXPECT_TRUE(std::isnan(r.value("missing")));
}
