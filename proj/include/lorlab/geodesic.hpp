#pragma once

// Causal geodesics of warped-product metrics, solved two independent ways:
// direct RK4 integration of the second-order system, and the first-integral
// reduction using kappa = b(t) dx/ds and eps = g(v, v), which turns the
// geodesic into a monotone one-dimensional quadrature in t.

#include <span>
#include <variant>
#include <vector>

#include "lorlab/profile.hpp"

namespace lorlab {

struct ConservedQuantities {
  double kappa = 0.0;    // b(t) dx/ds
  double epsilon = 0.0;  // g(dot gamma, dot gamma)
};

struct GeodesicSample {
  double s = 0.0;
  double t = 0.0;
  double x = 0.0;
  double dtds = 0.0;
  double dxds = 0.0;
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  ConservedQuantities conserved;
  double max_param = kInf;  // affine parameter at which the domain boundary is reached
  bool inextendible = false;
  double max_kappa_drift = 0.0;
  double max_eps_drift = 0.0;

  SpacetimePoint endpoint() const { return {samples.back().t, samples.back().x}; }
};

/// (t, x, dt/ds, dx/ds)
struct GeodesicState {
  double t = 0.0;
  double x = 0.0;
  double dt = 0.0;
  double dx = 0.0;
};

/// Right-hand side of the first-order geodesic system. Throws DomainExceeded.
GeodesicState ode_rhs(const MetricProfile& profile, const GeodesicState& state);

struct IntegrateOptions {
  Tolerances tol{};
  /// Affine parameters at which a sample must land exactly (sorted or not).
  std::vector<double> checkpoints{};
  /// Steps whose t-range comes within this many steps of a kink are split
  /// into `kink_substeps` pieces.
  double kink_guard_steps = 4.0;
  int kink_substeps = 64;
};

/// Fixed-step classical RK4 from (p, v) until s_max or domain exit.
/// Throws StepTooLarge when conserved-quantity drift exceeds 1e3 * drift_tol * (1 + s).
GeodesicPath integrate_geodesic(const MetricProfile& profile, const SpacetimePoint& p,
                                const TangentVector& v, double s_max, double step,
                                const IntegrateOptions& opts = {});

ConservedQuantities conserved_quantities(const MetricProfile& profile, const SpacetimePoint& p,
                                         const TangentVector& v);

/// Issued instead of a point when the geodesic reaches the domain boundary first.
struct InextendibleCertificate {
  double max_param = 0.0;        // affine parameter of the boundary limit
  double boundary_t = 0.0;       // the missing time slice
  SpacetimePoint limit_point{};  // (boundary_t, lim x)
};

using AdvanceResult = std::variant<SpacetimePoint, InextendibleCertificate>;

inline bool is_point(const AdvanceResult& r) { return std::holds_alternative<SpacetimePoint>(r); }

/// Quadrature integrands of the reduced system, for future-directed data.
/// d s / d t and d x / d t as functions of t.
double ds_dt(const MetricProfile& profile, const ConservedQuantities& cq, double t) noexcept;
double dx_dt(const MetricProfile& profile, const ConservedQuantities& cq, double t) noexcept;

/// Affine-parameter increment between time slices t0 < t1 (future branch).
double affine_span(const MetricProfile& profile, const ConservedQuantities& cq, double t0,
                   double t1);
/// Spatial displacement accumulated between time slices t0 < t1 (future branch).
double spatial_span(const MetricProfile& profile, const ConservedQuantities& cq, double t0,
                    double t1);

/// Point reached at affine parameter s_target by inverting the s-integral.
/// Requires v future-directed causal with tau0 > 0; throws PreconditionViolated otherwise.
AdvanceResult quadrature_advance(const MetricProfile& profile, const SpacetimePoint& p,
                                 const TangentVector& v, double s_target,
                                 const Tolerances& tol = {});

struct TimeAdvance {
  SpacetimePoint point;
  double s = 0.0;
};

/// Point where the geodesic from (p, v) crosses the slice t_target.
/// Past-directed data is reflected. t_target must be in the domain and on the
/// side of p.t that v points to.
TimeAdvance advance_to_time(const MetricProfile& profile, const SpacetimePoint& p,
                            const TangentVector& v, double t_target, const Tolerances& tol = {});

/// exp_p(v) = gamma_v(1). Past-directed data is handled by time reflection.
/// Throws NotCausal for spacelike v, PreconditionViolated for v = 0.
AdvanceResult causal_exp(const MetricProfile& profile, const SpacetimePoint& p,
                         const TangentVector& v, const Tolerances& tol = {});

/// Samples the quadrature solution at n+1 evenly spaced parameters in [0, s_max],
/// stopping early (inextendible) when the boundary comes first.
GeodesicPath quadrature_path(const MetricProfile& profile, const SpacetimePoint& p,
                             const TangentVector& v, double s_max, int n,
                             const Tolerances& tol = {});

struct ContinuityRow {
  double radius = 0.0;
  double max_displacement = 0.0;
  int evaluated = 0;
  int skipped = 0;  // non-causal, orientation-flipping, or outside the exp domain
};

struct ContinuityTable {
  std::vector<ContinuityRow> rows;
  bool monotone = true;  // displacement non-increasing as the radius shrinks
};

/// Worst displacement of exp_p over 32 velocities on the circle of each radius
/// around v. Throws PreconditionViolated when v is not in the domain of exp_p.
ContinuityTable exp_continuity_probe(const MetricProfile& profile, const SpacetimePoint& p,
                                     const TangentVector& v, std::span<const double> radii,
                                     const Tolerances& tol = {});

/// Largest pairwise gap between RK4 at steps h1, h2 and the quadrature solution,
/// over 10 shared parameters in (0, s_end]; s_end = 1, or 90% of the maximal
/// parameter when the geodesic leaves the domain before s = 1.
double uniqueness_witness(const MetricProfile& profile, const SpacetimePoint& p,
                          const TangentVector& v, double h1, double h2,
                          const Tolerances& tol = {});

}  // namespace lorlab
