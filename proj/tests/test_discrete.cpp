#include <cmath>
#include <cstdlib>
#include <functional>

#include <gtest/gtest.h>

#include "lorlab/causal.hpp"
#include "lorlab/discrete.hpp"
#include "lorlab/error.hpp"

using namespace lorlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}

}  // namespace

TEST(SampleSpace, TwoPointFlatInterval) {
  const auto s = build_space(builtin_profile("minkowski"), {{0.1, 0}, {0.9, 0}});
  EXPECT_EQ(s.chron(0, 1), 1);
  EXPECT_EQ(s.chron(1, 0), 0);
  EXPECT_NEAR(s.taumat(0, 1), 0.8, 1e-14);
  EXPECT_EQ(s.taumat(1, 0), 0.0);
  EXPECT_EQ(s.causal(0, 0), 1);
  EXPECT_EQ(s.chron(0, 0), 0);
  EXPECT_NEAR(s.dmat(0, 1), 0.8, 1e-15);
}

TEST(SampleSpace, Contracts) {
  const auto& mk = builtin_profile("minkowski");
  EXPECT_EQ(kind_of([&] { sample_space(mk, {0, 1, 0, 1}, 1, 1); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { sample_space(builtin_profile("strip01"), {0, 1, 0, 1}, 10, 1); }),
            ErrorKind::RegionOutsideDomain);
  const auto big = sample_space(mk, {0, 1, 0, 1}, 501, 1);
  EXPECT_EQ(kind_of([&] { check_axioms(big, 1e-7); }), ErrorKind::TooLarge);
}

TEST(SampleSpace, StripMatrixInvariants) {
  const auto s = sample_space(builtin_profile("strip01"), {0.05, 0.95, 0, 1}, 200, 7);
  ASSERT_EQ(s.size(), 200u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s.causal(i, i), 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.chron(i, j)) EXPECT_EQ(s.causal(i, j), 1);
      EXPECT_EQ(s.taumat(i, j) > 0.0, s.chron(i, j) == 1);
      EXPECT_EQ(s.dmat(i, j), s.dmat(j, i));
    }
  }
  const auto rep = check_axioms(s, 1e-7);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.find("lower_semicontinuity")->status, CheckStatus::Skipped);
}

TEST(SampleSpace, DeterministicPerSeedAndThreadCount) {
  const auto& w = builtin_profile("warpb");
  const auto a = sample_space(w, {-1, 1, -1, 1}, 60, 42);
  setenv("LORLAB_THREADS", "3", 1);
  const auto b = sample_space(w, {-1, 1, -1, 1}, 60, 42);
  unsetenv("LORLAB_THREADS");
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.taumat, b.taumat);
  EXPECT_EQ(a.chron, b.chron);
  const auto c = sample_space(w, {-1, 1, -1, 1}, 60, 43);
  EXPECT_NE(a.points, c.points);
}

TEST(CheckAxioms, AllCatalogSpacesPass) {
  for (const auto& p : builtin_catalog()) {
    const Region r = p.domain().bounded_above() ? Region{0.05, 0.95, 0, 1} : Region{-1, 1, -1, 1};
    const auto s = sample_space(p, r, 80, 3);
    EXPECT_TRUE(check_axioms(s, 1e-7).passed()) << p.name();
    EXPECT_EQ(check_pushup(s).status, CheckStatus::Pass) << p.name();
    EXPECT_EQ(check_causality(s).status, CheckStatus::Pass) << p.name();
  }
}

TEST(CheckAxioms, ZeroedTauOnChronologicalPair) {
  auto s = build_space(builtin_profile("minkowski"), {{0, 0}, {1, 0}, {2, 0.5}});
  s.taumat(1, 2) = 0.0;
  const auto* c = check_axioms(s, 1e-7).find("positivity_iff_chronological");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, CheckStatus::Fail);
  EXPECT_EQ(c->witness[0], 1u);
  EXPECT_EQ(c->witness[1], 2u);
}

TEST(CheckAxioms, LoweredTauBreaksReverseTriangle) {
  auto s = build_space(builtin_profile("minkowski"), {{0, 0}, {1, 0}, {2, 0.5}});
  s.taumat(0, 2) = s.taumat(0, 1) + s.taumat(1, 2) - 1e-3;
  const auto* c = check_axioms(s, 1e-7).find("reverse_triangle");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, CheckStatus::Fail);
  EXPECT_NEAR(c->residual, 1e-3, 1e-12);
  EXPECT_EQ(c->arity, 3);
  EXPECT_EQ(c->witness[1], 1u);
}

TEST(CheckAxioms, TauOffCausalIsReported) {
  auto s = build_space(builtin_profile("minkowski"), {{0, 0}, {0, 5}});
  s.taumat(0, 1) = 0.25;
  const auto* c = check_axioms(s, 1e-7).find("vanishing_off_causal");
  EXPECT_EQ(c->status, CheckStatus::Fail);
  EXPECT_EQ(c->residual, 0.25);
}

TEST(CheckAxioms, BrokenTransitivity) {
  auto s = build_space(builtin_profile("minkowski"), {{0, 0}, {1, 0}, {2, 0}});
  s.causal(0, 2) = 0;
  s.chron(0, 2) = 0;
  s.taumat(0, 2) = 0;
  const auto* c = check_axioms(s, 1e-7).find("causal_transitive");
  EXPECT_EQ(c->status, CheckStatus::Fail);
  EXPECT_EQ(c->witness[0], 0u);
  EXPECT_EQ(c->witness[2], 2u);
}

TEST(Pushup, Cases) {
  const auto& mk = builtin_profile("minkowski");
  EXPECT_EQ(check_pushup(sample_space(mk, {0, 1, 0, 1}, 100, 5)).status, CheckStatus::Pass);
  // x <= y along a null line, then y << z.
  auto s = build_space(mk, {{0, 0}, {1, 1}, {2, 1}});
  ASSERT_EQ(s.chron(0, 1), 0);
  ASSERT_EQ(s.causal(0, 1), 1);
  s.chron(0, 2) = 0;
  const auto c = check_pushup(s);
  EXPECT_EQ(c.status, CheckStatus::Fail);
  EXPECT_EQ(c.witness[0], 0u);
  EXPECT_EQ(c.witness[1], 1u);
  EXPECT_EQ(c.witness[2], 2u);
  // No related pairs at all.
  EXPECT_EQ(check_pushup(build_space(mk, {{0, 0}, {0, 1}, {0, 2}})).status, CheckStatus::Pass);
}

TEST(Causality, Cases) {
  const auto& mk = builtin_profile("minkowski");
  EXPECT_EQ(check_causality(build_space(mk, {{0, 0}, {1, 0}})).status, CheckStatus::Pass);
  auto s = build_space(mk, {{0, 0}, {1, 0}});
  s.causal(1, 0) = 1;
  const auto c = check_causality(s);
  EXPECT_EQ(c.status, CheckStatus::Fail);
  EXPECT_EQ(c.witness[0], 0u);
  EXPECT_EQ(c.witness[1], 1u);
}
