#include "lorlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "lorlab/causal.hpp"
#include "lorlab/error.hpp"

namespace lorlab {
namespace {

constexpr int kBisections = 100;

void require_chronological(const MetricProfile& profile, const SpacetimePoint& p,
                           const SpacetimePoint& q, const Tolerances& tol) {
  if (causally_related(profile, p, q, tol).relation != Relation::Chronological) {
    throw Error(ErrorKind::NotChronological,
                fmt::format("({}, {}) << ({}, {}) does not hold in {}", p.t, p.x, q.t, q.x,
                            profile.name()));
  }
}

// Time slice just inside an upper boundary, used for boundary limits.
double near_boundary(double hi, double from) { return hi - 1e-9 * std::max(1.0, hi - from); }

// Geometric sequence of times approaching hi from `from`.
std::vector<double> approach_times(double hi, double from, int terms) {
  std::vector<double> out;
  for (int n = 1; n <= terms; ++n) out.push_back(hi - (hi - from) * std::ldexp(1.0, -n));
  return out;
}

// Smallest t in (lo, hi] with f(t) > 0, given f(lo) <= 0 < f(hi), f increasing.
template <class F>
double first_exceed(F&& f, double lo, double hi) {
  for (int i = 0; i < kBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::FiniteCompactness: return "finite_compactness";
    case Condition::TimelikeCauchy: return "timelike_cauchy";
    case Condition::ConditionA: return "condition_a";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::HoldsOnProbe ? "holds_on_probe" : "fails_with_witness";
}

double ProbeReport::value(std::string_view key) const noexcept {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string to_record(const ProbeReport& report) {
  std::string out;
  out += fmt::format("condition: {}\n", to_string(report.condition));
  out += fmt::format("verdict: {}\n", to_string(report.verdict));
  out += fmt::format("reason: {}\n", report.reason);
  for (const auto& [k, v] : report.values) out += fmt::format("{}: {:.17g}\n", k, v);
  for (std::size_t i = 0; i < report.sequence.size(); ++i) {
    out += fmt::format("sequence[{}]: {:.17g}, {:.17g}\n", i, report.sequence[i].t,
                       report.sequence[i].x);
  }
  return out;
}

K1Slice k1_slice(const MetricProfile& profile, const SpacetimePoint& p, const SpacetimePoint& q,
                 double bound, double t, const Tolerances& tol) {
  const double w = cone_integral(profile, q.t, t);
  K1Slice s{t, q.x - w, q.x + w, false, 0.0, 0.0};
  auto tau_at = [&](double x) { return time_separation(profile, p, {t, x}, tol); };
  const double center = std::clamp(p.x, s.cone_left, s.cone_right);
  if (tau_at(center) <= bound) return s;
  s.has_gap = true;
  // tau(p, .) on a slice is symmetric about p.x and decreasing in |x - p.x|.
  auto solve_edge = [&](double inside_gap, double edge) {
    if (tau_at(edge) > bound) return edge > inside_gap ? kInf : -kInf;
    double in = inside_gap, out = edge;
    for (int i = 0; i < kBisections; ++i) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (tau_at(mid) > bound ? in : out) = mid;
    }
    return out;
  };
  s.gap_left = solve_edge(center, s.cone_left);
  s.gap_right = solve_edge(center, s.cone_right);
  return s;
}

FiniteCompactnessResult probe_finite_compactness(const MetricProfile& profile,
                                                 const SpacetimePoint& p, const SpacetimePoint& q,
                                                 double bound, const ProbeOptions& opts) {
  require_chronological(profile, p, q, opts.tol);
  if (!(bound > 0.0)) throw Error(ErrorKind::PreconditionViolated, "bound B must be > 0");
  const auto& tol = opts.tol;
  const auto& dom = profile.domain();

  auto edges = [&](double t) {
    const double w = cone_integral(profile, q.t, t);
    return std::pair{SpacetimePoint{t, q.x - w}, SpacetimePoint{t, q.x + w}};
  };
  // Smallest tau(p, .) over the slice: attained on a cone edge of q.
  auto slice_min_tau = [&](double t) {
    const auto [l, r] = edges(t);
    return std::min(time_separation(profile, p, l, tol), time_separation(profile, p, r, tol));
  };
  auto excess = [&](double t) { return slice_min_tau(t) - bound; };

  FiniteCompactnessResult out;
  auto& region = out.region;
  auto& report = out.report;
  region.p = p;
  region.q = q;
  region.bound = bound;
  report.condition = Condition::FiniteCompactness;
  report.values.emplace_back("bound", bound);

  auto fill_slices = [&](double t_last) {
    for (int k = 0; k <= opts.slices; ++k) {
      const double t = q.t + (t_last - q.t) * k / opts.slices;
      region.slices.push_back(k1_slice(profile, p, q, bound, t, tol));
    }
  };

  if (excess(q.t) > 0.0) {
    // tau(p, x) >= tau(p, q) > B for every x >= q: K1 is empty.
    region.t_end = q.t;
    region.bounded = region.closed_in_domain = true;
    report.verdict = Verdict::HoldsOnProbe;
    report.reason = "empty";
    report.values.emplace_back("t_end", q.t);
    return out;
  }

  double t_hi = 0.0;
  if (dom.bounded_above()) {
    const double t_near = near_boundary(dom.hi, q.t);
    if (excess(t_near) <= 0.0) {
      // K1 reaches the missing slice t = hi: bounded in coordinates, not closed.
      region.t_end = dom.hi;
      region.bounded = true;
      region.closed_in_domain = false;
      fill_slices(t_near);
      const double tau_center = time_separation(profile, p, {t_near, q.x}, tol);
      const bool use_center = tau_center <= bound;
      double sup_tau = 0.0;
      for (double t : approach_times(dom.hi, q.t, opts.witness_terms)) {
        SpacetimePoint x{t, q.x};
        if (!use_center) {
          const auto [l, r] = edges(t);
          x = std::abs(l.x - p.x) >= std::abs(r.x - p.x) ? l : r;
        }
        sup_tau = std::max(sup_tau, time_separation(profile, p, x, tol));
        report.sequence.push_back(x);
      }
      report.verdict = Verdict::FailsWithWitness;
      report.reason = "cut_by_boundary";
      report.values.emplace_back("boundary_t", dom.hi);
      report.values.emplace_back("sup_tau", sup_tau);
      report.values.emplace_back("boundary_distance", dom.hi - report.sequence.back().t);
      return out;
    }
    t_hi = t_near;
  } else {
    double width = std::max(1.0, q.t - p.t);
    bool found = false;
    for (int i = 0; i < 64 && !found; ++i, width *= 2.0) {
      t_hi = q.t + width;
      found = excess(t_hi) > 0.0;
    }
    if (!found) {
      region.bounded = false;
      for (int n = 0; n < opts.witness_terms; ++n) {
        const auto [l, r] = edges(q.t + std::ldexp(1.0, n));
        report.sequence.push_back(std::abs(l.x - p.x) >= std::abs(r.x - p.x) ? l : r);
      }
      report.verdict = Verdict::FailsWithWitness;
      report.reason = "unbounded";
      return out;
    }
  }

  region.t_end = first_exceed(excess, q.t, t_hi);
  region.bounded = true;
  region.closed_in_domain = profile.contains(region.t_end);
  fill_slices(region.t_end);
  report.verdict = region.closed_in_domain ? Verdict::HoldsOnProbe : Verdict::FailsWithWitness;
  report.reason = region.closed_in_domain ? "capped_by_bound" : "cut_by_boundary";
  report.values.emplace_back("t_end", region.t_end);
  return out;
}

ConditionAResult probe_condition_a(const MetricProfile& profile, const SpacetimePoint& p,
                                   const SpacetimePoint& q, const TangentVector& v,
                                   const std::vector<double>& bounds, const ProbeOptions& opts) {
  require_chronological(profile, p, q, opts.tol);
  const auto cls = classify_vector(profile, q, v, opts.tol.eps_null);
  if (!is_causal(cls.character)) throw Error(ErrorKind::NotCausal, "direction is not causal");
  if (!(v.tau0 > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "direction must be future-directed");
  }
  const auto& tol = opts.tol;
  const auto& dom = profile.domain();
  const auto cq = conserved_quantities(profile, q, v);
  auto point_at = [&](double t) { return advance_to_time(profile, q, v, t, tol).point; };
  auto tau_at = [&](double t) { return time_separation(profile, p, point_at(t), tol); };

  ConditionAResult out;
  auto& g = out.outcome;
  g.v = v;
  double t_cap = kInf;
  if (dom.bounded_above()) {
    g.inextendible = true;
    g.max_param = affine_span(profile, cq, q.t, dom.hi);
    t_cap = near_boundary(dom.hi, q.t);
    g.sup_tau = tau_at(t_cap);
  }

  for (double bound : bounds) {
    Crossing c{bound, false, kInf, kInf};
    double t_hi = q.t;
    if (tau_at(q.t) > bound) {
      c.diverged = true;
      c.s_star = 0.0;
      c.t_star = q.t;
      g.crossings.push_back(c);
      continue;
    }
    if (g.inextendible) {
      c.diverged = g.sup_tau > bound;
      t_hi = t_cap;
    } else {
      double width = 1.0;
      for (int i = 0; i < 200 && !c.diverged; ++i, width *= 2.0) {
        t_hi = q.t + width;
        c.diverged = tau_at(t_hi) > bound;
      }
    }
    if (c.diverged) {
      c.t_star = first_exceed([&](double t) { return tau_at(t) - bound; }, q.t, t_hi);
      c.s_star = affine_span(profile, cq, q.t, c.t_star);
    }
    g.crossings.push_back(c);
  }

  auto& report = out.report;
  report.condition = Condition::ConditionA;
  const bool all = std::all_of(g.crossings.begin(), g.crossings.end(),
                               [](const Crossing& c) { return c.diverged; });
  report.verdict = all ? Verdict::HoldsOnProbe : Verdict::FailsWithWitness;
  report.values.emplace_back("tau0", v.tau0);
  report.values.emplace_back("xi0", v.xi0);
  report.values.emplace_back("max_param", g.max_param);
  for (std::size_t i = 0; i < g.crossings.size(); ++i) {
    const auto& c = g.crossings[i];
    report.values.emplace_back(fmt::format("bound[{}]", i), c.bound);
    report.values.emplace_back(fmt::format("s_star[{}]", i), c.s_star);
    report.values.emplace_back(fmt::format("t_star[{}]", i), c.t_star);
  }
  if (all) {
    report.reason = "diverges_past_all_bounds";
    return out;
  }
  if (g.inextendible) {
    report.reason = "capped_at_boundary";
    report.values.emplace_back("boundary_t", dom.hi);
    report.values.emplace_back("sup_tau", g.sup_tau);
    for (double t : approach_times(dom.hi, q.t, opts.witness_terms)) {
      report.sequence.push_back(point_at(t));
    }
  } else {
    report.reason = "no_crossing_within_horizon";
  }
  return out;
}

TimelikeCauchyResult probe_timelike_cauchy(const MetricProfile& profile,
                                           const std::vector<SpacetimePoint>& sequence,
                                           const std::vector<double>& bounds,
                                           const ProbeOptions& opts) {
  const std::size_t n = sequence.size();
  if (n < 3 || bounds.size() != n) {
    throw Error(ErrorKind::PreconditionViolated,
                "need at least 3 points and one bound per point");
  }
  auto violated = [](std::size_t index, const std::string& what) {
    return Error(ErrorKind::PremiseViolated, fmt::format("index {}: {}", index, what));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!profile.contains(sequence[i])) throw violated(i, "point outside the domain");
    if (!(bounds[i] >= 0.0)) throw violated(i, "bound is negative");
    if (i > 0 && bounds[i] > bounds[i - 1]) throw violated(i, "bounds increase");
  }
  if (!(bounds.back() < bounds.front())) throw violated(n - 1, "bounds do not decrease");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (causally_related(profile, sequence[i], sequence[i + 1], opts.tol).relation !=
        Relation::Chronological) {
      throw violated(i, "x_n << x_{n+1} fails");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double tau = time_separation(profile, sequence[i], sequence[j], opts.tol);
      if (tau > bounds[i] * (1.0 + 1e-9) + 1e-15) {
        throw violated(i, fmt::format("tau(x_n, x_{}) = {:.17g} exceeds B_n = {:.17g}", j, tau,
                                      bounds[i]));
      }
    }
  }

  TimelikeCauchyResult out;
  const std::size_t tail_begin = n - std::max<std::size_t>(3, n / 4);
  for (std::size_t i = tail_begin; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.tail_diameter = std::max(out.tail_diameter, std::hypot(sequence[j].t - sequence[i].t,
                                                                 sequence[j].x - sequence[i].x));
    }
  }
  // Aitken extrapolation per coordinate on the last three terms.
  auto aitken = [](double a, double b, double c) {
    const double d1 = c - b;
    const double d0 = b - a;
    const double den = d1 - d0;
    return den != 0.0 ? c - d1 * d1 / den : c;
  };
  const auto& a = sequence[n - 3];
  const auto& b = sequence[n - 2];
  const auto& c = sequence[n - 1];
  out.limit = {aitken(a.t, b.t, c.t), aitken(a.x, b.x, c.x)};

  auto& report = out.report;
  report.condition = Condition::TimelikeCauchy;
  report.values.emplace_back("tail_diameter", out.tail_diameter);
  report.values.emplace_back("limit_t", out.limit.t);
  report.values.emplace_back("limit_x", out.limit.x);

  const auto& dom = profile.domain();
  const double clearance = std::min(out.limit.t - dom.lo, dom.hi - out.limit.t);
  report.values.emplace_back("boundary_distance", clearance);
  const double needed = std::max(opts.cauchy_tol, 10.0 * out.tail_diameter);

  if (out.tail_diameter >= opts.cauchy_tol) {
    report.verdict = Verdict::FailsWithWitness;
    report.reason = "non_convergent_tail";
    report.sequence.assign(sequence.begin() + static_cast<std::ptrdiff_t>(tail_begin), sequence.end());
  } else if (!(clearance > needed)) {
    report.verdict = Verdict::FailsWithWitness;
    report.reason = "limit_on_missing_boundary";
    report.sequence.assign(sequence.begin() + static_cast<std::ptrdiff_t>(tail_begin), sequence.end());
  } else {
    report.verdict = Verdict::HoldsOnProbe;
    report.reason = "converges_inside_domain";
  }
  return out;
}

std::pair<std::vector<SpacetimePoint>, std::vector<double>> geodesic_cauchy_sequence(
    const MetricProfile& profile, const SpacetimePoint& q, int terms, const Tolerances& tol) {
  const auto m = profile.eval(q.t);
  const TangentVector v{1.0 / std::sqrt(m.a), 0.0};
  const auto cq = conserved_quantities(profile, q, v);
  const auto& dom = profile.domain();
  const double s_lim = dom.bounded_above() ? affine_span(profile, cq, q.t, dom.hi) : 1.0;
  std::vector<SpacetimePoint> points;
  std::vector<double> bounds;
  for (int n = 1; n <= terms; ++n) {
    const double gap = s_lim * std::ldexp(1.0, -n);
    const auto r = quadrature_advance(profile, q, v, s_lim - gap, tol);
    points.push_back(std::get<SpacetimePoint>(r));
    bounds.push_back(2.0 * gap);
  }
  return {points, bounds};
}

ImplicationConfig default_implication_config(const MetricProfile& profile) {
  const auto& dom = profile.domain();
  const bool bounded = dom.bounded_above() && dom.bounded_below();
  const double width = bounded ? dom.hi - dom.lo : 0.0;
  double t0 = 0.0;
  if (!dom.contains(0.0)) t0 = bounded ? dom.lo + 0.1 * width : reduction_origin(profile);
  const double step = bounded ? 0.1 * width : 1.0;
  ImplicationConfig cfg;
  cfg.p = {t0, 0.0};
  cfg.q = {t0 + step, 0.0};
  return cfg;
}

ImplicationReport implication_report(const MetricProfile& profile, const ImplicationConfig& config) {
  const auto& opts = config.options;
  ImplicationReport out;
  out.finite_compactness = probe_finite_compactness(profile, config.p, config.q, config.fc_bound, opts);

  auto sequence = config.cauchy_sequence;
  auto bounds = config.cauchy_bounds;
  if (sequence.empty()) {
    std::tie(sequence, bounds) = geodesic_cauchy_sequence(profile, config.q, config.cauchy_terms, opts.tol);
  }
  out.timelike_cauchy = probe_timelike_cauchy(profile, sequence, bounds, opts);

  auto directions = config.directions;
  if (directions.empty()) {
    const auto m = profile.eval(config.q.t);
    const double slope = std::sqrt(m.a / m.b);
    directions = {{1.0 / std::sqrt(m.a), 0.0}, {1.0, slope}, {1.0, -slope}};
  }
  auto& summary = out.condition_a_summary;
  summary.condition = Condition::ConditionA;
  summary.verdict = Verdict::HoldsOnProbe;
  summary.reason = "diverges_past_all_bounds";
  for (std::size_t i = 0; i < directions.size(); ++i) {
    out.condition_a.push_back(
        probe_condition_a(profile, config.p, config.q, directions[i], config.ca_bounds, opts));
    const auto& r = out.condition_a.back();
    if (!r.report.holds() && summary.holds()) {
      summary.verdict = Verdict::FailsWithWitness;
      summary.reason = r.report.reason;
      summary.values = r.report.values;
      summary.values.emplace_back("direction", static_cast<double>(i));
      summary.sequence = r.report.sequence;
    }
  }

  const bool fc = out.finite_compactness.report.holds();
  const bool tcc = out.timelike_cauchy.report.holds();
  const bool ca = summary.holds();
  out.consistent = fc == tcc && tcc == ca;
  if (out.consistent) {
    out.note = fc ? "all three conditions hold on the probe" : "all three conditions fail";
  } else if (fc && !tcc) {
    out.note = "finite compactness holds but timelike Cauchy completeness fails: numerical fault";
  } else {
    out.note = "verdicts disagree: numerical fault";
  }
  return out;
}

}  // namespace lorlab
