#pragma once

// Causal relations, light cones and the Lorentzian distance for warped
// products. In this family x -> x + c is an isometry and the null cone slope
// is sqrt(a/b), so p <= q reduces to |x_q - x_p| <= int_{t_p}^{t_q} sqrt(a/b).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lorlab/geodesic.hpp"
#include "lorlab/matrix.hpp"
#include "lorlab/profile.hpp"

namespace lorlab {

enum class Relation { Chronological, CausalBoundary, Unrelated };

struct CausalVerdict {
  Relation relation = Relation::Unrelated;
  double margin = 0.0;  // int_{t_p}^{t_q} sqrt(a/b) - |x_q - x_p|
};

/// int_{t0}^{t1} sqrt(a/b) du (negative when t1 < t0).
double cone_integral(const MetricProfile& profile, double t0, double t1);

CausalVerdict causally_related(const MetricProfile& profile, const SpacetimePoint& p,
                               const SpacetimePoint& q, const Tolerances& tol = {});

struct ConeSlice {
  double t = 0.0;
  double x_left = 0.0;
  double x_right = 0.0;
};

/// Left/right null boundary of J+(p) (grid above p.t) or J-(p) (grid below).
/// A mixed grid is rejected with PreconditionViolated.
std::vector<ConeSlice> cone_boundary(const MetricProfile& profile, const SpacetimePoint& p,
                                     std::span<const double> t_grid);

/// Base time t* of the reduced coordinate: 0 when inside the domain, else the
/// midpoint of a bounded domain, else one unit inside the finite end.
double reduction_origin(const MetricProfile& profile);

/// (tau, x) with tau = int_{t*}^{t} sqrt(a). Throws NotReducible unless b == 1.
SpacetimePoint minkowski_reduce(const MetricProfile& profile, const SpacetimePoint& p);

enum class DistanceMethod { Auto, Reduction, Shooting };

std::string_view to_string(DistanceMethod m) noexcept;
std::string_view to_string(Relation r) noexcept;

struct DistanceOptions {
  DistanceMethod method = DistanceMethod::Auto;
  bool with_maximizer = true;
  int maximizer_samples = 64;
  Tolerances tol{};
};

struct DistanceResult {
  double value = 0.0;
  std::optional<GeodesicPath> maximizer;
  DistanceMethod method = DistanceMethod::Reduction;
  CausalVerdict verdict{};
  /// Initial velocity of the maximizer at p (unit speed when timelike).
  std::optional<TangentVector> initial_velocity;
};

/// T(p, q): 0 unless p << q; otherwise the g-length of the maximizing geodesic,
/// found by Minkowski reduction (b == 1) or by shooting on the momentum kappa.
/// Every member of this family is globally hyperbolic, so the shooting value is
/// the supremum rather than a lower bound.
DistanceResult lorentzian_distance(const MetricProfile& profile, const SpacetimePoint& p,
                                   const SpacetimePoint& q, const DistanceOptions& opts = {});

/// Convenience: the value only, no maximizer.
double time_separation(const MetricProfile& profile, const SpacetimePoint& p,
                       const SpacetimePoint& q, const Tolerances& tol = {});

/// Shooting solve used by lorentzian_distance; exposed for cross-checks on b == 1.
struct ShootingSolution {
  double kappa = 0.0;     // at unit speed, eps = -1
  double length = 0.0;    // g-length of the connecting geodesic
  double residual = 0.0;  // endpoint x error
  int roots = 1;
};
ShootingSolution shoot_timelike(const MetricProfile& profile, const SpacetimePoint& p,
                                const SpacetimePoint& q, double margin);

/// Infimum over partitions of a <=-chain of the summed tau, by dynamic programming
/// over prefixes. Throws NotAChain if a consecutive pair is not causally ordered.
double tau_length_chain(const RealMatrix& tau, const RelationMatrix& causal,
                        std::span<const std::size_t> chain);

/// Euclidean length of a polyline in (t, x); throws PreconditionViolated for < 2 points.
double d_length(std::span<const SpacetimePoint> points);

}  // namespace lorlab
