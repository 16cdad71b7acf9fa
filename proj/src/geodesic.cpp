#include "lorlab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "lorlab/error.hpp"
#include "lorlab/quadrature.hpp"

namespace lorlab {
namespace {

GeodesicState rhs_unchecked(const MetricProfile& profile, const GeodesicState& y) noexcept {
  const auto m = profile.eval_unchecked(y.t);
  const double g000 = m.da / (2.0 * m.a);
  const double g011 = m.db / (2.0 * m.a);
  const double g101 = m.db / (2.0 * m.b);
  return {y.dt, y.dx, -g000 * y.dt * y.dt - g011 * y.dx * y.dx, -2.0 * g101 * y.dt * y.dx};
}

GeodesicState axpy(const GeodesicState& y, double h, const GeodesicState& k) noexcept {
  return {y.t + h * k.t, y.x + h * k.x, y.dt + h * k.dt, y.dx + h * k.dx};
}

// One classical RK4 step; nullopt if any stage leaves the domain.
std::optional<GeodesicState> rk4_step(const MetricProfile& profile, const GeodesicState& y,
                                      double h) noexcept {
  const auto& dom = profile.domain();
  const auto k1 = rhs_unchecked(profile, y);
  const auto y2 = axpy(y, 0.5 * h, k1);
  if (!dom.contains(y2.t)) return std::nullopt;
  const auto k2 = rhs_unchecked(profile, y2);
  const auto y3 = axpy(y, 0.5 * h, k2);
  if (!dom.contains(y3.t)) return std::nullopt;
  const auto k3 = rhs_unchecked(profile, y3);
  const auto y4 = axpy(y, h, k3);
  if (!dom.contains(y4.t)) return std::nullopt;
  const auto k4 = rhs_unchecked(profile, y4);
  GeodesicState out;
  const double w = h / 6.0;
  out.t = y.t + w * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
  out.x = y.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.dt = y.dt + w * (k1.dt + 2.0 * k2.dt + 2.0 * k3.dt + k4.dt);
  out.dx = y.dx + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  if (!dom.contains(out.t)) return std::nullopt;
  return out;
}

bool near_kink(std::span<const double> kinks, double t, double reach) noexcept {
  return std::any_of(kinks.begin(), kinks.end(),
                     [&](double k) { return std::abs(k - t) <= reach; });
}

std::optional<GeodesicState> guarded_step(const MetricProfile& profile,
                                          std::span<const double> kinks, const GeodesicState& y,
                                          double h, const IntegrateOptions& opts) noexcept {
  const double reach = (1.0 + opts.kink_guard_steps) * std::abs(y.dt) * h;
  if (opts.kink_substeps <= 1 || !near_kink(kinks, y.t, reach)) {
    return rk4_step(profile, y, h);
  }
  GeodesicState cur = y;
  const double sub = h / opts.kink_substeps;
  for (int i = 0; i < opts.kink_substeps; ++i) {
    auto next = rk4_step(profile, cur, sub);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

ConservedQuantities invariants_at(const MetricProfile& profile, const GeodesicState& y) noexcept {
  const auto m = profile.eval_unchecked(y.t);
  return {m.b * y.dx, -m.a * y.dt * y.dt + m.b * y.dx * y.dx};
}

void require_inside(const MetricProfile& profile, const SpacetimePoint& p) {
  if (!profile.contains(p)) profile.eval(p.t);  // throws DomainExceeded with context
}

quad::Options quad_options() { return quad::Options{}; }

}  // namespace

GeodesicState ode_rhs(const MetricProfile& profile, const GeodesicState& state) {
  require_inside(profile, {state.t, state.x});
  return rhs_unchecked(profile, state);
}

ConservedQuantities conserved_quantities(const MetricProfile& profile, const SpacetimePoint& p,
                                         const TangentVector& v) {
  const auto m = profile.eval(p.t);
  return {m.b * v.xi0, -m.a * v.tau0 * v.tau0 + m.b * v.xi0 * v.xi0};
}

GeodesicPath integrate_geodesic(const MetricProfile& profile, const SpacetimePoint& p,
                                const TangentVector& v, double s_max, double step,
                                const IntegrateOptions& opts) {
  require_inside(profile, p);
  if (v.is_zero()) throw Error(ErrorKind::PreconditionViolated, "initial velocity is zero");
  if (!(step > 0.0)) throw Error(ErrorKind::PreconditionViolated, "step must be positive");
  if (!(s_max >= 0.0)) throw Error(ErrorKind::PreconditionViolated, "s_max must be >= 0");

  const auto kinks = profile.kinks();
  std::vector<double> checkpoints = opts.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  auto next_checkpoint = checkpoints.begin();

  GeodesicPath path;
  path.conserved = conserved_quantities(profile, p, v);
  GeodesicState y{p.t, p.x, v.tau0, v.xi0};
  double s = 0.0;
  path.samples.push_back({s, y.t, y.x, y.dt, y.dx});

  const double drift_limit = 1e3 * opts.tol.drift_tol;
  double h = step;
  // Below this step length the remaining distance to the boundary is closed by
  // linear extrapolation.
  const double h_floor = 1e-15 * std::max(1.0, s_max);

  while (s < s_max) {
    while (next_checkpoint != checkpoints.end() && *next_checkpoint <= s) ++next_checkpoint;
    double h_try = std::min(h, s_max - s);
    if (next_checkpoint != checkpoints.end()) h_try = std::min(h_try, *next_checkpoint - s);

    auto next = guarded_step(profile, kinks, y, h_try, opts);
    if (!next) {
      if (h_try <= h_floor) {
        const auto& dom = profile.domain();
        const double boundary = y.dt > 0.0 ? dom.hi : dom.lo;
        path.inextendible = true;
        path.max_param = s + (boundary - y.t) / y.dt;
        break;
      }
      h = 0.5 * h_try;
      continue;
    }
    y = *next;
    // Land exactly on checkpoints and s_max despite rounding in the sum.
    if (next_checkpoint != checkpoints.end() && h_try == *next_checkpoint - s) {
      s = *next_checkpoint;
    } else if (h_try == s_max - s) {
      s = s_max;
    } else {
      s += h_try;
    }
    path.samples.push_back({s, y.t, y.x, y.dt, y.dx});

    const auto cq = invariants_at(profile, y);
    const double dk = std::abs(cq.kappa - path.conserved.kappa);
    const double de = std::abs(cq.epsilon - path.conserved.epsilon);
    path.max_kappa_drift = std::max(path.max_kappa_drift, dk);
    path.max_eps_drift = std::max(path.max_eps_drift, de);
    if (std::max(dk, de) > drift_limit * (1.0 + s)) {
      std::ostringstream os;
      os.precision(6);
      os << profile.name() << ": conserved-quantity drift " << std::max(dk, de) << " at s = " << s
         << " exceeds " << drift_limit * (1.0 + s) << "; reduce the step (" << step << ")";
      throw Error(ErrorKind::StepTooLarge, os.str());
    }
  }
  return path;
}

double ds_dt(const MetricProfile& profile, const ConservedQuantities& cq, double t) noexcept {
  const auto m = profile.eval_unchecked(t);
  const double radicand = cq.kappa * cq.kappa / m.b - cq.epsilon;
  return std::sqrt(m.a / radicand);
}

double dx_dt(const MetricProfile& profile, const ConservedQuantities& cq, double t) noexcept {
  const auto m = profile.eval_unchecked(t);
  const double radicand = cq.kappa * cq.kappa / m.b - cq.epsilon;
  return cq.kappa / m.b * std::sqrt(m.a / radicand);
}

double affine_span(const MetricProfile& profile, const ConservedQuantities& cq, double t0,
                   double t1) {
  const auto kinks = profile.kinks();
  return quad::integrate([&](double t) { return ds_dt(profile, cq, t); }, t0, t1, kinks,
                         quad_options())
      .value;
}

double spatial_span(const MetricProfile& profile, const ConservedQuantities& cq, double t0,
                    double t1) {
  if (cq.kappa == 0.0) return 0.0;
  const auto kinks = profile.kinks();
  return quad::integrate([&](double t) { return dx_dt(profile, cq, t); }, t0, t1, kinks,
                         quad_options())
      .value;
}

namespace {

void require_future_causal(const MetricProfile& profile, const SpacetimePoint& p,
                           const TangentVector& v, const Tolerances& tol) {
  const auto cls = classify_vector(profile, p, v, tol.eps_null);
  if (cls.character == CausalCharacter::Zero) {
    throw Error(ErrorKind::PreconditionViolated, "zero velocity has no geodesic");
  }
  if (!is_causal(cls.character)) {
    throw Error(ErrorKind::NotCausal, "velocity is spacelike");
  }
  if (!(v.tau0 > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "velocity must be future-directed (tau0 > 0)");
  }
}

// Solves S(T) = s_target where S(T) = int_{t0}^{T} ds/dt, assuming a finite
// bracket [lo, hi] with S(lo) = s_lo <= s_target <= S(hi). Safeguarded Newton:
// the derivative of S is the integrand itself.
double invert_affine(const MetricProfile& profile, const ConservedQuantities& cq,
                     std::span<const double> kinks, double lo, double s_lo, double hi,
                     double s_target) {
  auto integrand = [&](double t) { return ds_dt(profile, cq, t); };
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double s_t = s_lo + quad::integrate(integrand, lo, t, kinks, quad_options()).value;
    const double residual = s_t - s_target;
    if (residual < 0.0) {
      lo = t;
      s_lo = s_t;
    } else {
      hi = t;
    }
    if (std::abs(residual) <= 1e-15 * std::max(1.0, s_target) ||
        hi - lo <= 1e-12 * std::max(1.0, std::abs(t))) {
      break;
    }
    const double slope = profile.contains(t) ? integrand(t) : 0.0;
    double next = slope > 0.0 ? t - residual / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

}  // namespace

AdvanceResult quadrature_advance(const MetricProfile& profile, const SpacetimePoint& p,
                                 const TangentVector& v, double s_target,
                                 const Tolerances& tol) {
  require_future_causal(profile, p, v, tol);
  if (!(s_target >= 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "s_target must be >= 0");
  }
  if (s_target == 0.0) return p;
  const auto cq = conserved_quantities(profile, p, v);
  const auto kinks = profile.kinks();
  const auto& dom = profile.domain();
  auto integrand = [&](double t) { return ds_dt(profile, cq, t); };

  double hi = p.t;
  bool bracketed = false;
  double lo = p.t;
  double s_lo = 0.0;
  if (dom.bounded_above()) {
    const double s_boundary = quad::integrate(integrand, p.t, dom.hi, kinks, quad_options()).value;
    if (s_boundary <= s_target) {
      const double x_limit = p.x + spatial_span(profile, cq, p.t, dom.hi);
      return InextendibleCertificate{s_boundary, dom.hi, {dom.hi, x_limit}};
    }
    hi = dom.hi;
    bracketed = true;
  }
  // Bracket by doubling the time increment (stops at the boundary if finite).
  double width = std::max(s_target * v.tau0, 1e-12 * std::max(1.0, std::abs(p.t)));
  for (int i = 0; i < 2100; ++i) {
    const double cand = p.t + width;
    if (dom.bounded_above() && cand >= dom.hi) break;
    const double s_cand = s_lo + quad::integrate(integrand, lo, cand, kinks, quad_options()).value;
    if (s_cand >= s_target) {
      hi = cand;
      bracketed = true;
      break;
    }
    lo = cand;
    s_lo = s_cand;
    width *= 2.0;
  }
  if (!bracketed) {
    throw Error(ErrorKind::PreconditionViolated, "could not bracket the affine parameter");
  }
  const double t_end = invert_affine(profile, cq, kinks, lo, s_lo, hi, s_target);
  const double x_end = p.x + spatial_span(profile, cq, p.t, t_end);
  return SpacetimePoint{t_end, x_end};
}

namespace {

SpacetimePoint unreflect(const SpacetimePoint& q) { return {-q.t, q.x}; }

}  // namespace

AdvanceResult causal_exp(const MetricProfile& profile, const SpacetimePoint& p,
                         const TangentVector& v, const Tolerances& tol) {
  const auto cls = classify_vector(profile, p, v, tol.eps_null);
  if (cls.character == CausalCharacter::Zero) {
    throw Error(ErrorKind::PreconditionViolated, "zero vector is not in the exp domain");
  }
  if (!is_causal(cls.character)) throw Error(ErrorKind::NotCausal, "velocity is spacelike");
  if (v.tau0 > 0.0) return quadrature_advance(profile, p, v, 1.0, tol);

  const auto mirror = profile.reflected();
  auto r = quadrature_advance(mirror, {-p.t, p.x}, {-v.tau0, v.xi0}, 1.0, tol);
  if (auto* q = std::get_if<SpacetimePoint>(&r)) return unreflect(*q);
  auto cert = std::get<InextendibleCertificate>(r);
  cert.boundary_t = -cert.boundary_t;
  cert.limit_point = unreflect(cert.limit_point);
  return cert;
}

TimeAdvance advance_to_time(const MetricProfile& profile, const SpacetimePoint& p,
                            const TangentVector& v, double t_target, const Tolerances& tol) {
  const auto cls = classify_vector(profile, p, v, tol.eps_null);
  if (!is_causal(cls.character)) {
    throw Error(ErrorKind::NotCausal, "advance_to_time needs a nonzero causal velocity");
  }
  if (!profile.contains(t_target)) profile.eval(t_target);
  if (v.tau0 < 0.0) {
    const auto mirror = profile.reflected();
    auto r = advance_to_time(mirror, {-p.t, p.x}, {-v.tau0, v.xi0}, -t_target, tol);
    return {unreflect(r.point), r.s};
  }
  if (t_target < p.t) {
    throw Error(ErrorKind::PreconditionViolated, "target slice lies in the past of p");
  }
  const auto cq = conserved_quantities(profile, p, v);
  return {{t_target, p.x + spatial_span(profile, cq, p.t, t_target)},
          affine_span(profile, cq, p.t, t_target)};
}

GeodesicPath quadrature_path(const MetricProfile& profile, const SpacetimePoint& p,
                             const TangentVector& v, double s_max, int n, const Tolerances& tol) {
  if (n < 1) throw Error(ErrorKind::PreconditionViolated, "need at least one interval");
  const bool past = v.tau0 < 0.0;
  const MetricProfile mirror = past ? profile.reflected() : profile;
  const SpacetimePoint pf = past ? SpacetimePoint{-p.t, p.x} : p;
  const TangentVector vf = past ? TangentVector{-v.tau0, v.xi0} : v;
  const double sign = past ? -1.0 : 1.0;

  require_future_causal(mirror, pf, vf, tol);
  GeodesicPath path;
  path.conserved = conserved_quantities(mirror, pf, vf);
  const auto& cq = path.conserved;
  auto sample_at = [&](double s, const SpacetimePoint& q) {
    const auto m = mirror.eval_unchecked(q.t);
    const double dtds = std::sqrt((cq.kappa * cq.kappa / m.b - cq.epsilon) / m.a);
    path.samples.push_back({s, sign * q.t, q.x, sign * dtds, cq.kappa / m.b});
  };
  sample_at(0.0, pf);
  for (int k = 1; k <= n; ++k) {
    const double s = s_max * k / n;
    auto r = quadrature_advance(mirror, pf, vf, s, tol);
    if (auto* q = std::get_if<SpacetimePoint>(&r)) {
      sample_at(s, *q);
    } else {
      const auto& cert = std::get<InextendibleCertificate>(r);
      path.inextendible = true;
      path.max_param = cert.max_param;
      break;
    }
  }
  return path;
}

ContinuityTable exp_continuity_probe(const MetricProfile& profile, const SpacetimePoint& p,
                                     const TangentVector& v, std::span<const double> radii,
                                     const Tolerances& tol) {
  const auto base_r = causal_exp(profile, p, v, tol);
  if (!is_point(base_r)) {
    throw Error(ErrorKind::PreconditionViolated, "v is not in the domain of exp_p");
  }
  const auto base = std::get<SpacetimePoint>(base_r);
  constexpr int kDirections = 32;

  ContinuityTable table;
  for (double r : radii) {
    ContinuityRow row{r, 0.0, 0, 0};
    for (int k = 0; k < kDirections; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / kDirections;
      const TangentVector w{v.tau0 + r * std::cos(theta), v.xi0 + r * std::sin(theta)};
      const auto cls = classify_vector(profile, p, w, tol.eps_null);
      if (!is_causal(cls.character) || (w.tau0 > 0.0) != (v.tau0 > 0.0)) {
        ++row.skipped;
        continue;
      }
      const auto q = causal_exp(profile, p, w, tol);
      if (!is_point(q)) {
        ++row.skipped;
        continue;
      }
      const auto& qp = std::get<SpacetimePoint>(q);
      row.max_displacement = std::max(row.max_displacement, std::hypot(qp.t - base.t, qp.x - base.x));
      ++row.evaluated;
    }
    table.rows.push_back(row);
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      const auto& big = table.rows[i];
      const auto& small = table.rows[j];
      if (small.radius < big.radius &&
          small.max_displacement > big.max_displacement * (1.0 + 1e-9) + 1e-12) {
        table.monotone = false;
      }
    }
  }
  return table;
}

double uniqueness_witness(const MetricProfile& profile, const SpacetimePoint& p,
                          const TangentVector& v, double h1, double h2, const Tolerances& tol) {
  if (v.tau0 == 0.0) throw Error(ErrorKind::PreconditionViolated, "uniqueness needs tau0 != 0");
  double s_end = 1.0;
  if (auto r = causal_exp(profile, p, v, tol); !is_point(r)) {
    s_end = 0.9 * std::get<InextendibleCertificate>(r).max_param;
  }
  IntegrateOptions opts;
  opts.tol = tol;
  std::vector<double> shared;
  for (int k = 1; k <= 10; ++k) shared.push_back(s_end * k / 10.0);
  opts.checkpoints = shared;

  const auto path1 = integrate_geodesic(profile, p, v, s_end, h1, opts);
  const auto path2 = integrate_geodesic(profile, p, v, s_end, h2, opts);
  auto at = [](const GeodesicPath& path, double s) {
    const auto it = std::find_if(path.samples.begin(), path.samples.end(),
                                 [s](const GeodesicSample& g) { return g.s == s; });
    if (it == path.samples.end()) {
      throw Error(ErrorKind::PreconditionViolated, "checkpoint missing from integrated path");
    }
    return SpacetimePoint{it->t, it->x};
  };
  auto dist = [](const SpacetimePoint& a, const SpacetimePoint& b) {
    return std::hypot(a.t - b.t, a.x - b.x);
  };

  const bool past = v.tau0 < 0.0;
  const MetricProfile mirror = past ? profile.reflected() : profile;
  double gap = 0.0;
  for (double s : shared) {
    const auto q = past ? quadrature_advance(mirror, {-p.t, p.x}, {-v.tau0, v.xi0}, s, tol)
                        : quadrature_advance(profile, p, v, s, tol);
    auto qp = std::get<SpacetimePoint>(q);
    if (past) qp = unreflect(qp);
    const auto a = at(path1, s);
    const auto b = at(path2, s);
    gap = std::max({gap, dist(a, qp), dist(b, qp), dist(a, b)});
  }
  return gap;
}

}  // namespace lorlab
