#pragma once

// Finite Lorentzian pre-length spaces sampled from a warped-product profile,
// with exhaustive checks of the relation algebra, the time-separation axioms,
// push-up, and causality.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lorlab/causal.hpp"
#include "lorlab/matrix.hpp"
#include "lorlab/profile.hpp"

namespace lorlab {

/// Closed coordinate rectangle [t0, t1] x [x0, x1].
struct Region {
  double t0 = 0.0;
  double t1 = 1.0;
  double x0 = 0.0;
  double x1 = 1.0;
};

struct DiscreteCausalSpace {
  std::vector<SpacetimePoint> points;
  RelationMatrix chron;   // <<
  RelationMatrix causal;  // <=
  RealMatrix dmat;        // Euclidean coordinate distance
  RealMatrix taumat;      // time separation

  std::size_t size() const noexcept { return points.size(); }
};

/// Triple loops are capped at this many points.
inline constexpr std::size_t kMaxCheckedPoints = 500;

/// n uniform points in the region, deterministic per seed.
/// Throws PreconditionViolated for n < 2, RegionOutsideDomain if the region
/// is not inside the open domain.
DiscreteCausalSpace sample_space(const MetricProfile& profile, const Region& region,
                                 std::size_t n, std::uint64_t seed, const Tolerances& tol = {});

/// Relations, distances and tau for an explicit point list.
DiscreteCausalSpace build_space(const MetricProfile& profile, std::vector<SpacetimePoint> points,
                                const Tolerances& tol = {});

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s) noexcept;

struct AxiomCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;  // worst violation measure; compared against the tolerance
  std::array<std::size_t, 3> witness{};
  int arity = 0;          // 0: no witness, 2: pair (i, j), 3: triple (i, j, k)
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool passed() const noexcept;
  const AxiomCheck* find(std::string_view name) const noexcept;
};

/// Relation algebra (reflexive/transitive <=, transitive <<, << within <=),
/// reverse triangle inequality within tol, tau > 0 iff <<, tau = 0 off <=.
/// Lower semicontinuity is vacuous on finite sets and reported as skipped.
AxiomReport check_axioms(const DiscreteCausalSpace& space, double tol);

/// x <= y << z or x << y <= z implies x << z.
AxiomCheck check_pushup(const DiscreteCausalSpace& space);

/// x <= y and y <= x implies x = y.
AxiomCheck check_causality(const DiscreteCausalSpace& space);

}  // namespace lorlab
