#include "lorlab/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lorlab/error.hpp"
#include "lorlab/parallel.hpp"
#include "lorlab/simd/kernels.hpp"

namespace lorlab {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_checkable(const DiscreteCausalSpace& space) {
  if (space.size() > kMaxCheckedPoints) {
    std::ostringstream os;
    os << space.size() << " points exceed the triple-loop limit of " << kMaxCheckedPoints;
    throw Error(ErrorKind::TooLarge, os.str());
  }
}

AxiomCheck pair_check(std::string name, std::size_t count, std::size_t i, std::size_t j) {
  AxiomCheck c{std::move(name), count == 0 ? CheckStatus::Pass : CheckStatus::Fail,
               static_cast<double>(count), {i, j, 0}, count == 0 ? 0 : 2};
  return c;
}

// Counts triples i R j R k with !(i R k); witness is the first found.
AxiomCheck transitivity(std::string name, const RelationMatrix& rel) {
  const auto& k = simd::active();
  const std::size_t n = rel.size();
  AxiomCheck out{std::move(name), CheckStatus::Pass, 0.0, {}, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel(i, j)) continue;
      const auto* row_j = rel.row(j).data();
      const auto* row_i = rel.row(i).data();
      std::size_t start = 0;
      while (start < n) {
        const std::size_t hit = start + k.first_and_not(row_j + start, row_i + start, n - start);
        if (hit >= n) break;
        if (out.status == CheckStatus::Pass) {
          out.status = CheckStatus::Fail;
          out.witness = {i, j, hit};
          out.arity = 3;
        }
        out.residual += 1.0;
        start = hit + 1;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped (finite)";
  }
  return "unknown";
}

bool AxiomReport::passed() const noexcept {
  return std::none_of(checks.begin(), checks.end(),
                      [](const AxiomCheck& c) { return c.status == CheckStatus::Fail; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

DiscreteCausalSpace build_space(const MetricProfile& profile, std::vector<SpacetimePoint> points,
                                const Tolerances& tol) {
  for (const auto& p : points) {
    if (!profile.contains(p)) profile.eval(p.t);
  }
  const std::size_t n = points.size();
  DiscreteCausalSpace space;
  space.points = std::move(points);
  space.chron = RelationMatrix(n, 0);
  space.causal = RelationMatrix(n, 0);
  space.dmat = RealMatrix(n, 0.0);
  space.taumat = RealMatrix(n, 0.0);

  parallel_for(n, [&](std::size_t i) {
    const auto& p = space.points[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& q = space.points[j];
      space.dmat(i, j) = std::hypot(q.t - p.t, q.x - p.x);
      if (i == j) {
        space.causal(i, j) = 1;
        continue;
      }
      const auto verdict = causally_related(profile, p, q, tol);
      space.causal(i, j) = verdict.relation != Relation::Unrelated;
      space.chron(i, j) = verdict.relation == Relation::Chronological;
      if (space.chron(i, j)) space.taumat(i, j) = time_separation(profile, p, q, tol);
    }
  });
  return space;
}

DiscreteCausalSpace sample_space(const MetricProfile& profile, const Region& region,
                                 std::size_t n, std::uint64_t seed, const Tolerances& tol) {
  if (n < 2) throw Error(ErrorKind::PreconditionViolated, "a sampled space needs n >= 2 points");
  if (!(region.t0 <= region.t1) || !(region.x0 <= region.x1) || !profile.contains(region.t0) ||
      !profile.contains(region.t1)) {
    std::ostringstream os;
    os << "region [" << region.t0 << ", " << region.t1 << "] x [" << region.x0 << ", "
       << region.x1 << "] is not inside the domain of " << profile.name();
    throw Error(ErrorKind::RegionOutsideDomain, os.str());
  }
  std::mt19937_64 rng(seed);
  std::vector<SpacetimePoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ut = unit_uniform(rng);
    const double ux = unit_uniform(rng);
    points.push_back({region.t0 + ut * (region.t1 - region.t0),
                      region.x0 + ux * (region.x1 - region.x0)});
  }
  return build_space(profile, std::move(points), tol);
}

AxiomReport check_axioms(const DiscreteCausalSpace& space, double tol) {
  require_checkable(space);
  const std::size_t n = space.size();
  const auto& kern = simd::active();
  AxiomReport report;
  report.checks.push_back({"lower_semicontinuity", CheckStatus::Skipped, 0.0, {}, 0});

  {
    std::size_t bad = 0, wi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!space.causal(i, i)) {
        if (bad++ == 0) wi = i;
      }
    }
    report.checks.push_back(pair_check("causal_reflexive", bad, wi, wi));
  }
  report.checks.push_back(transitivity("causal_transitive", space.causal));
  report.checks.push_back(transitivity("chron_transitive", space.chron));
  {
    std::size_t bad = 0, wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (space.chron(i, j) && !space.causal(i, j) && bad++ == 0) {
          wi = i;
          wj = j;
        }
      }
    }
    report.checks.push_back(pair_check("chron_subset_causal", bad, wi, wj));
  }

  // (ii) reverse triangle: tau(x,z) >= tau(x,y) + tau(y,z) whenever x <= y <= z.
  {
    AxiomCheck rt{"reverse_triangle", CheckStatus::Pass, 0.0, {}, 0};
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const double* tau_x = space.taumat.row(x).data();
      for (std::size_t y = 0; y < n; ++y) {
        if (!space.causal(x, y)) continue;
        const auto m = kern.max_excess(space.taumat(x, y), space.taumat.row(y).data(), tau_x,
                                       space.causal.row(y).data(), n);
        if (m.index < n && m.value > worst) {
          worst = m.value;
          rt.witness = {x, y, m.index};
          rt.arity = 3;
        }
      }
    }
    rt.residual = worst;
    rt.status = worst <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    report.checks.push_back(rt);
  }

  // (iii) tau > 0 exactly on chronologically related pairs.
  {
    std::size_t bad = 0, wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((space.taumat(i, j) > 0.0) != (space.chron(i, j) != 0) && bad++ == 0) {
          wi = i;
          wj = j;
        }
      }
    }
    report.checks.push_back(pair_check("positivity_iff_chronological", bad, wi, wj));
  }

  // (iv) tau vanishes off the causal relation.
  {
    AxiomCheck vz{"vanishing_off_causal", CheckStatus::Pass, 0.0, {}, 0};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(space.taumat(i, j));
        if (!space.causal(i, j) && v > vz.residual) {
          vz.residual = v;
          vz.witness = {i, j, 0};
          vz.arity = 2;
        }
      }
    }
    vz.status = vz.residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    report.checks.push_back(vz);
  }
  return report;
}

AxiomCheck check_pushup(const DiscreteCausalSpace& space) {
  require_checkable(space);
  const std::size_t n = space.size();
  const auto& kern = simd::active();
  AxiomCheck out{"pushup", CheckStatus::Pass, 0.0, {}, 0};
  auto scan = [&](std::size_t x, std::size_t y, const RelationMatrix& second) {
    const auto* row_y = second.row(y).data();
    const auto* chron_x = space.chron.row(x).data();
    std::size_t start = 0;
    while (start < n) {
      const std::size_t z = start + kern.first_and_not(row_y + start, chron_x + start, n - start);
      if (z >= n) break;
      if (out.status == CheckStatus::Pass) {
        out.status = CheckStatus::Fail;
        out.witness = {x, y, z};
        out.arity = 3;
      }
      out.residual += 1.0;
      start = z + 1;
    }
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (space.chron(x, y)) scan(x, y, space.causal);  // x << y <= z
      if (space.causal(x, y)) scan(x, y, space.chron);  // x <= y << z
    }
  }
  return out;
}

AxiomCheck check_causality(const DiscreteCausalSpace& space) {
  const std::size_t n = space.size();
  std::size_t bad = 0, wi = 0, wj = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.causal(i, j) && space.causal(j, i) && bad++ == 0) {
        wi = i;
        wj = j;
      }
    }
  }
  return pair_check("causality", bad, wi, wj);
}

}  // namespace lorlab
