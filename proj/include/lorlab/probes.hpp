#pragma once

// Desk-scale probes of three completeness conditions: finite compactness (via
// compactness of K1 = {x : p << q <= x, tau(p, x) <= B}), timelike Cauchy
// completeness, and Condition A (tau(p, gamma) diverging along future causal
// geodesics from q). A finite computation can refute a condition with a
// replayable witness; it can only ever report "holds_on_probe", never "holds".

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lorlab/geodesic.hpp"
#include "lorlab/profile.hpp"

namespace lorlab {

enum class Condition { FiniteCompactness, TimelikeCauchy, ConditionA };
enum class Verdict { HoldsOnProbe, FailsWithWitness };

std::string_view to_string(Condition c) noexcept;
std::string_view to_string(Verdict v) noexcept;

struct ProbeReport {
  Condition condition = Condition::FiniteCompactness;
  Verdict verdict = Verdict::HoldsOnProbe;
  std::string reason;                                  // short token, e.g. "cut_by_boundary"
  std::vector<std::pair<std::string, double>> values;  // numeric payload
  std::vector<SpacetimePoint> sequence;                // point payload (witness sequence)

  bool holds() const noexcept { return verdict == Verdict::HoldsOnProbe; }
  /// Looks a numeric payload entry up; NaN when absent.
  double value(std::string_view key) const noexcept;
};

/// Key-value text, one `key: value` per line, stable across runs.
std::string to_record(const ProbeReport& report);

/// One time slice of K1: the part of the q-cone interval [cone_left, cone_right]
/// outside the open gap (gap_left, gap_right) where tau(p, .) > B.
struct K1Slice {
  double t = 0.0;
  double cone_left = 0.0;
  double cone_right = 0.0;
  bool has_gap = false;
  double gap_left = 0.0;
  double gap_right = 0.0;

  bool contains(double x) const noexcept {
    if (x < cone_left || x > cone_right) return false;
    return !(has_gap && x > gap_left && x < gap_right);
  }
};

struct K1Region {
  SpacetimePoint p;
  SpacetimePoint q;
  double bound = 0.0;
  std::vector<K1Slice> slices;
  double t_end = 0.0;         // last time slice meeting K1
  bool bounded = false;       // finite coordinate extent
  bool closed_in_domain = false;  // terminating slice attained inside the domain
};

struct FiniteCompactnessResult {
  ProbeReport report;
  K1Region region;
};

struct ProbeOptions {
  Tolerances tol{};
  int slices = 32;          // K1 slices recorded
  int witness_terms = 20;   // length of escaping sequences
  double cauchy_tol = 1e-6; // tail diameter threshold
};

/// The K1 slice at time t (t >= q.t), computed exactly as the probe does.
K1Slice k1_slice(const MetricProfile& profile, const SpacetimePoint& p, const SpacetimePoint& q,
                 double bound, double t, const Tolerances& tol = {});

/// Throws NotChronological unless p << q; PreconditionViolated unless B > 0.
FiniteCompactnessResult probe_finite_compactness(const MetricProfile& profile,
                                                 const SpacetimePoint& p, const SpacetimePoint& q,
                                                 double bound, const ProbeOptions& opts = {});

struct Crossing {
  double bound = 0.0;
  bool diverged = false;
  double s_star = kInf;  // first affine parameter with tau(p, gamma(s)) > bound
  double t_star = kInf;  // its time coordinate
};

struct GeodesicOutcome {
  TangentVector v;
  double max_param = kInf;
  bool inextendible = false;
  double sup_tau = kInf;  // limit of tau(p, gamma) at the boundary when inextendible
  std::vector<Crossing> crossings;
};

struct ConditionAResult {
  ProbeReport report;
  GeodesicOutcome outcome;
};

/// Follows the geodesic gamma_v from q toward its maximal parameter and reports,
/// for each bound, the first parameter past which tau(p, gamma) exceeds it.
ConditionAResult probe_condition_a(const MetricProfile& profile, const SpacetimePoint& p,
                                   const SpacetimePoint& q, const TangentVector& v,
                                   const std::vector<double>& bounds,
                                   const ProbeOptions& opts = {});

struct TimelikeCauchyResult {
  ProbeReport report;
  SpacetimePoint limit;       // extrapolated limit of the sequence
  double tail_diameter = 0.0;
};

/// Verifies x_n << x_{n+1}, tau(x_n, x_{n+m}) <= B_n and a vanishing B trend
/// (PremiseViolated with the first failing index), then judges convergence.
TimelikeCauchyResult probe_timelike_cauchy(const MetricProfile& profile,
                                           const std::vector<SpacetimePoint>& sequence,
                                           const std::vector<double>& bounds,
                                           const ProbeOptions& opts = {});

/// Points gamma(s_lim (1 - 2^-n)), n = 1..terms, along the unit vertical geodesic
/// from q, with s_lim its maximal parameter if finite and 1 otherwise, and
/// bounds B_n = 2 s_lim 2^-n.
std::pair<std::vector<SpacetimePoint>, std::vector<double>> geodesic_cauchy_sequence(
    const MetricProfile& profile, const SpacetimePoint& q, int terms,
    const Tolerances& tol = {});

struct ImplicationConfig {
  SpacetimePoint p;
  SpacetimePoint q;
  double fc_bound = 5.0;
  std::vector<double> ca_bounds{10.0, 100.0};
  std::vector<TangentVector> directions;  // empty: unit vertical plus both null directions
  std::vector<SpacetimePoint> cauchy_sequence;  // empty: geodesic_cauchy_sequence from q
  std::vector<double> cauchy_bounds;
  int cauchy_terms = 30;
  ProbeOptions options{};
};

/// p and q near the start of the domain, one time unit apart (a tenth of the
/// domain width when the domain is bounded).
ImplicationConfig default_implication_config(const MetricProfile& profile);

struct ImplicationReport {
  FiniteCompactnessResult finite_compactness;
  TimelikeCauchyResult timelike_cauchy;
  std::vector<ConditionAResult> condition_a;
  ProbeReport condition_a_summary;
  bool consistent = false;  // the three verdicts agree
  std::string note;
};

ImplicationReport implication_report(const MetricProfile& profile, const ImplicationConfig& config);

}  // namespace lorlab
