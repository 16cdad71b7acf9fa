#include "lorlab/causal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lorlab/error.hpp"
#include "lorlab/quadrature.hpp"

namespace lorlab {
namespace {

void require_inside(const MetricProfile& profile, const SpacetimePoint& p) {
  if (!profile.contains(p)) profile.eval(p.t);
}

constexpr int kVerifySamples = 17;
constexpr int kScanResolution = 1 << 10;
constexpr double kRapidityCap = 40.0;

struct Shooter {
  const MetricProfile& profile;
  SpacetimePoint p;
  SpacetimePoint q;
  double sqrt_b_p;

  ConservedQuantities cq(double eta) const { return {sqrt_b_p * std::sinh(eta), -1.0}; }
  double residual(double eta) const {
    return spatial_span(profile, cq(eta), p.t, q.t) - (q.x - p.x);
  }
  double length(double eta) const { return affine_span(profile, cq(eta), p.t, q.t); }

  // Illinois-modified regula falsi on a sign-changing cell.
  double refine(double lo, double r_lo, double hi, double r_hi) const {
    int side = 0;
    double eta = lo;
    for (int iter = 0; iter < 300; ++iter) {
      eta = (lo * r_hi - hi * r_lo) / (r_hi - r_lo);
      if (!(eta > lo && eta < hi)) eta = 0.5 * (lo + hi);
      const double r = residual(eta);
      if (r == 0.0) return eta;
      if ((r < 0.0) == (r_lo < 0.0)) {
        lo = eta;
        r_lo = r;
        if (side == -1) r_hi *= 0.5;
        side = -1;
      } else {
        hi = eta;
        r_hi = r;
        if (side == 1) r_lo *= 0.5;
        side = 1;
      }
      if (hi - lo <= 4e-16 * std::max(1.0, std::abs(eta))) break;
    }
    return eta;
  }
};

}  // namespace

double cone_integral(const MetricProfile& profile, double t0, double t1) {
  const auto kinks = profile.kinks();
  return quad::integrate(
             [&](double t) {
               const auto m = profile.eval_unchecked(t);
               return std::sqrt(m.a / m.b);
             },
             t0, t1, kinks)
      .value;
}

CausalVerdict causally_related(const MetricProfile& profile, const SpacetimePoint& p,
                               const SpacetimePoint& q, const Tolerances& tol) {
  require_inside(profile, p);
  require_inside(profile, q);
  const double margin = cone_integral(profile, p.t, q.t) - std::abs(q.x - p.x);
  if (q.t > p.t && margin > tol.eps_null) return {Relation::Chronological, margin};
  if (q.t >= p.t && std::abs(margin) <= tol.eps_null) return {Relation::CausalBoundary, margin};
  return {Relation::Unrelated, margin};
}

std::vector<ConeSlice> cone_boundary(const MetricProfile& profile, const SpacetimePoint& p,
                                     std::span<const double> t_grid) {
  require_inside(profile, p);
  const bool any_future = std::any_of(t_grid.begin(), t_grid.end(), [&](double t) { return t > p.t; });
  const bool any_past = std::any_of(t_grid.begin(), t_grid.end(), [&](double t) { return t < p.t; });
  if (any_future && any_past) {
    throw Error(ErrorKind::PreconditionViolated, "cone grid mixes future and past slices");
  }
  std::vector<ConeSlice> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!profile.contains(t)) profile.eval(t);
    const double w = std::abs(cone_integral(profile, p.t, t));
    out.push_back({t, p.x - w, p.x + w});
  }
  return out;
}

double reduction_origin(const MetricProfile& profile) {
  const auto& dom = profile.domain();
  if (dom.contains(0.0)) return 0.0;
  if (dom.bounded_below() && dom.bounded_above()) return 0.5 * (dom.lo + dom.hi);
  return dom.bounded_below() ? dom.lo + 1.0 : dom.hi - 1.0;
}

SpacetimePoint minkowski_reduce(const MetricProfile& profile, const SpacetimePoint& p) {
  if (!profile.b_is_unit()) {
    throw Error(ErrorKind::NotReducible, profile.name() + ": b is not identically 1");
  }
  require_inside(profile, p);
  return {cone_integral(profile, reduction_origin(profile), p.t), p.x};
}

std::string_view to_string(DistanceMethod m) noexcept {
  switch (m) {
    case DistanceMethod::Auto: return "auto";
    case DistanceMethod::Reduction: return "reduction";
    case DistanceMethod::Shooting: return "shooting";
  }
  return "unknown";
}

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Chronological: return "chronological";
    case Relation::CausalBoundary: return "causal_boundary";
    case Relation::Unrelated: return "unrelated";
  }
  return "unknown";
}

ShootingSolution shoot_timelike(const MetricProfile& profile, const SpacetimePoint& p,
                                const SpacetimePoint& q, double margin) {
  const auto mp = profile.eval(p.t);
  const Shooter shooter{profile, p, q, std::sqrt(mp.b)};
  const double width = margin + std::abs(q.x - p.x);

  // Rapidity large enough that the endpoint lies within `margin` of the cone edge.
  double eta_max = std::clamp(0.5 * std::log(4.0 * width / std::max(margin, 1e-300)) + 2.0, 1.0,
                              kRapidityCap);
  if (!(shooter.residual(-eta_max) < 0.0 && shooter.residual(eta_max) > 0.0)) {
    eta_max = kRapidityCap;
  }

  auto collect_roots = [&](int cells) {
    std::vector<double> etas;
    std::vector<double> res;
    for (int i = 0; i <= cells; ++i) {
      etas.push_back(-eta_max + 2.0 * eta_max * i / cells);
      res.push_back(shooter.residual(etas.back()));
    }
    std::vector<double> roots;
    for (int i = 0; i < cells; ++i) {
      if (res[i] == 0.0) {
        roots.push_back(etas[i]);
      } else if ((res[i] < 0.0) != (res[i + 1] < 0.0) && res[i + 1] != 0.0) {
        roots.push_back(shooter.refine(etas[i], res[i], etas[i + 1], res[i + 1]));
      }
    }
    if (res[cells] == 0.0) roots.push_back(etas[cells]);
    return roots;
  };

  auto roots = collect_roots(kVerifySamples - 1);
  if (roots.size() != 1) roots = collect_roots(kScanResolution);
  if (roots.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << profile.name() << ": no sign change in the endpoint residual between (" << p.t << ", "
       << p.x << ") and (" << q.t << ", " << q.x << ") at resolution 2^10";
    throw Error(ErrorKind::ShootingFailed, os.str());
  }

  ShootingSolution best;
  best.length = -1.0;
  for (double eta : roots) {
    const double len = shooter.length(eta);
    const double kappa = shooter.cq(eta).kappa;
    if (len > best.length || (len == best.length && kappa < best.kappa)) {
      best = {kappa, len, shooter.residual(eta), static_cast<int>(roots.size())};
    }
  }
  return best;
}

namespace {

std::optional<GeodesicPath> trace_maximizer(const MetricProfile& profile, const SpacetimePoint& p,
                                            const SpacetimePoint& q, const TangentVector& v,
                                            const DistanceOptions& opts) {
  if (!opts.with_maximizer || p == q) return std::nullopt;
  const auto cq = conserved_quantities(profile, p, v);
  const double s_end = affine_span(profile, cq, p.t, q.t);
  auto path = quadrature_path(profile, p, v, s_end, opts.maximizer_samples, opts.tol);
  // The last sample is q up to the solver tolerance; pin it exactly.
  auto& last = path.samples.back();
  last.t = q.t;
  last.x = q.x;
  return path;
}

}  // namespace

DistanceResult lorentzian_distance(const MetricProfile& profile, const SpacetimePoint& p,
                                   const SpacetimePoint& q, const DistanceOptions& opts) {
  DistanceResult result;
  result.verdict = causally_related(profile, p, q, opts.tol);
  DistanceMethod method = opts.method;
  if (method == DistanceMethod::Auto) {
    method = profile.b_is_unit() ? DistanceMethod::Reduction : DistanceMethod::Shooting;
  }
  if (method == DistanceMethod::Reduction && !profile.b_is_unit()) {
    throw Error(ErrorKind::NotReducible, profile.name() + ": b is not identically 1");
  }
  result.method = method;

  const auto mp = profile.eval(p.t);
  const double dx = q.x - p.x;
  if (result.verdict.relation == Relation::Unrelated) return result;
  if (result.verdict.relation == Relation::CausalBoundary) {
    if (q.t > p.t) {
      // Null maximizer along the cone edge: dx/dt = +-sqrt(a/b).
      const TangentVector v{1.0, (dx >= 0.0 ? 1.0 : -1.0) * std::sqrt(mp.a / mp.b)};
      result.initial_velocity = v;
      result.maximizer = trace_maximizer(profile, p, q, v, opts);
    }
    return result;
  }

  if (method == DistanceMethod::Reduction) {
    const double margin = result.verdict.margin;
    const double dtau = margin + std::abs(dx);
    result.value = std::sqrt(margin * (dtau + std::abs(dx)));
    const TangentVector v{dtau / result.value / std::sqrt(mp.a), dx / result.value};
    result.initial_velocity = v;
    result.maximizer = trace_maximizer(profile, p, q, v, opts);
    return result;
  }

  const auto sol = shoot_timelike(profile, p, q, result.verdict.margin);
  result.value = sol.length;
  const TangentVector v{std::sqrt((sol.kappa * sol.kappa / mp.b + 1.0) / mp.a), sol.kappa / mp.b};
  result.initial_velocity = v;
  result.maximizer = trace_maximizer(profile, p, q, v, opts);
  return result;
}

double time_separation(const MetricProfile& profile, const SpacetimePoint& p,
                       const SpacetimePoint& q, const Tolerances& tol) {
  DistanceOptions opts;
  opts.with_maximizer = false;
  opts.tol = tol;
  return lorentzian_distance(profile, p, q, opts).value;
}

double tau_length_chain(const RealMatrix& tau, const RelationMatrix& causal,
                        std::span<const std::size_t> chain) {
  if (chain.empty()) throw Error(ErrorKind::NotAChain, "empty chain");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k] >= tau.size()) throw Error(ErrorKind::NotAChain, "chain index out of range");
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!causal(chain[k], chain[k + 1])) {
      std::ostringstream os;
      os << "points " << chain[k] << " and " << chain[k + 1] << " (positions " << k << ", "
         << k + 1 << ") are not causally ordered";
      throw Error(ErrorKind::NotAChain, os.str());
    }
  }
  std::vector<double> best(chain.size(), kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < chain.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      best[j] = std::min(best[j], best[i] + tau(chain[i], chain[j]));
    }
  }
  return best.back();
}

double d_length(std::span<const SpacetimePoint> points) {
  if (points.size() < 2) throw Error(ErrorKind::PreconditionViolated, "need at least 2 points");
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += std::hypot(points[i].t - points[i - 1].t, points[i].x - points[i - 1].x);
  }
  return total;
}

}  // namespace lorlab
