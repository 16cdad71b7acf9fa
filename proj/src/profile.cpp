#include "lorlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lorlab/error.hpp"

namespace lorlab {
namespace {

struct TermValue {
  double value;
  double derivative;
};

TermValue eval_term(const Term& term, double t) noexcept {
  switch (term.kind) {
    case TermKind::Constant:
      return {term.coeff, 0.0};
    case TermKind::Linear:
      return {term.coeff * t, term.coeff};
    case TermKind::Power: {
      const double u = t - term.center;
      const double r = std::abs(u);
      if (r == 0.0) return {0.0, 0.0};
      const double rp1 = std::pow(r, term.exponent - 1.0);
      return {term.coeff * rp1 * r, term.coeff * term.exponent * rp1 * (u > 0.0 ? 1.0 : -1.0)};
    }
    case TermKind::Exponential: {
      const double e = term.coeff * std::exp(term.rate * t);
      return {e, term.rate * e};
    }
  }
  return {0.0, 0.0};
}

void sum_terms(const std::vector<Term>& terms, double t, double& value, double& derivative) noexcept {
  value = 0.0;
  derivative = 0.0;
  for (const auto& term : terms) {
    const auto tv = eval_term(term, t);
    value += tv.value;
    derivative += tv.derivative;
  }
}

void validate_terms(const std::string& name, const std::vector<Term>& terms, const char* which) {
  if (terms.empty()) {
    throw Error(ErrorKind::InvalidProfile, name + ": term list for " + which + " is empty");
  }
  for (const auto& term : terms) {
    if (!std::isfinite(term.coeff) || !std::isfinite(term.center) || !std::isfinite(term.rate)) {
      throw Error(ErrorKind::InvalidProfile, name + ": non-finite term parameter in " + which);
    }
    if (term.kind == TermKind::Power && !(term.exponent > 1.0)) {
      std::ostringstream os;
      os << name << ": power term in " << which << " has exponent " << term.exponent
         << " <= 1 (metric would not be C^1)";
      throw Error(ErrorKind::InvalidProfile, os.str());
    }
  }
}

Term reflect(Term term) noexcept {
  switch (term.kind) {
    case TermKind::Constant: break;
    case TermKind::Linear: term.coeff = -term.coeff; break;
    case TermKind::Power: term.center = -term.center; break;
    case TermKind::Exponential: term.rate = -term.rate; break;
  }
  return term;
}

}  // namespace

MetricProfile MetricProfile::create(std::string name, std::vector<Term> terms_a,
                                    std::vector<Term> terms_b, TimeDomain domain, double alpha) {
  validate_terms(name, terms_a, "a");
  validate_terms(name, terms_b, "b");
  if (!(domain.lo < domain.hi) || std::isnan(domain.lo) || std::isnan(domain.hi)) {
    throw Error(ErrorKind::InvalidProfile, name + ": empty or malformed domain");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidProfile, name + ": positivity floor must be finite and > 0");
  }
  MetricProfile profile;
  profile.name_ = std::move(name);
  profile.terms_a_ = std::move(terms_a);
  profile.terms_b_ = std::move(terms_b);
  profile.domain_ = domain;
  profile.alpha_ = alpha;

  const auto [min_a, min_b] = profile.grid_minima();
  if (!(min_a >= alpha) || !(min_b >= alpha)) {
    std::ostringstream os;
    os << profile.name_ << ": declared floor " << alpha << " violated on the check grid (min a = "
       << min_a << ", min b = " << min_b << ")";
    throw Error(ErrorKind::InvalidProfile, os.str());
  }
  return profile;
}

std::pair<double, double> MetricProfile::grid_minima() const {
  double lo = domain_.lo;
  double hi = domain_.hi;
  if (!domain_.bounded_below() && !domain_.bounded_above()) {
    lo = -kFloorWindow;
    hi = kFloorWindow;
  } else if (!domain_.bounded_below()) {
    lo = hi - 2.0 * kFloorWindow;
  } else if (!domain_.bounded_above()) {
    hi = lo + 2.0 * kFloorWindow;
  }
  double min_a = kInf;
  double min_b = kInf;
  const double width = hi - lo;
  for (int i = 0; i < kFloorGridPoints; ++i) {
    const double t = lo + (i + 0.5) * width / kFloorGridPoints;
    const auto v = eval_unchecked(t);
    min_a = std::min(min_a, v.a);
    min_b = std::min(min_b, v.b);
  }
  return {min_a, min_b};
}

ProfileValues MetricProfile::eval_unchecked(double t) const noexcept {
  ProfileValues v;
  sum_terms(terms_a_, t, v.a, v.da);
  sum_terms(terms_b_, t, v.b, v.db);
  return v;
}

ProfileValues MetricProfile::eval(double t) const {
  if (!domain_.contains(t)) {
    std::ostringstream os;
    os.precision(17);
    os << name_ << ": t = " << t << " outside (" << domain_.lo << ", " << domain_.hi << ")";
    throw Error(ErrorKind::DomainExceeded, os.str());
  }
  return eval_unchecked(t);
}

bool MetricProfile::b_is_unit() const noexcept {
  double total = 0.0;
  for (const auto& term : terms_b_) {
    if (term.kind != TermKind::Constant && term.coeff != 0.0) return false;
    if (term.kind == TermKind::Constant) total += term.coeff;
  }
  return total == 1.0;
}

std::vector<double> MetricProfile::kinks() const {
  std::vector<double> out;
  for (const auto* terms : {&terms_a_, &terms_b_}) {
    for (const auto& term : *terms) {
      if (term.kind == TermKind::Power && term.coeff != 0.0 && domain_.contains(term.center)) {
        out.push_back(term.center);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MetricProfile MetricProfile::reflected() const {
  MetricProfile r = *this;
  r.name_ = name_ + "~reflected";
  for (auto& term : r.terms_a_) term = reflect(term);
  for (auto& term : r.terms_b_) term = reflect(term);
  r.domain_ = TimeDomain{-domain_.hi, -domain_.lo};
  return r;
}

ProfileValues eval_profile(const MetricProfile& profile, double t) { return profile.eval(t); }

ChristoffelTriple christoffel(const MetricProfile& profile, double t) {
  const auto v = profile.eval(t);
  return {v.da / (2.0 * v.a), v.db / (2.0 * v.a), v.db / (2.0 * v.b)};
}

VectorClass classify_vector(const MetricProfile& profile, const SpacetimePoint& p,
                            const TangentVector& v, double eps_null) {
  const auto m = profile.eval(p.t);
  const double norm = -m.a * v.tau0 * v.tau0 + m.b * v.xi0 * v.xi0;
  if (v.is_zero()) return {CausalCharacter::Zero, 0.0};
  if (std::abs(norm) <= eps_null) return {CausalCharacter::Null, norm};
  return {norm < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike, norm};
}

const std::vector<MetricProfile>& builtin_catalog() {
  static const std::vector<MetricProfile> catalog = [] {
    std::vector<MetricProfile> out;
    const TimeDomain line{};
    out.push_back(MetricProfile::create("minkowski", {Term::constant(1.0)}, {Term::constant(1.0)},
                                        line, 1.0));
    out.push_back(MetricProfile::create("strip01", {Term::constant(1.0)}, {Term::constant(1.0)},
                                        TimeDomain{0.0, 1.0}, 1.0));
    // e^{2t} has no positive lower bound on the whole line; the floor is only
    // checked on the finite window, where e^{-40} > 1e-18.
    out.push_back(MetricProfile::create("exp2t", {Term::exponential(1.0, 2.0)},
                                        {Term::constant(1.0)}, line, 1e-18));
    out.push_back(MetricProfile::create("c1power",
                                        {Term::constant(1.0), Term::power(1.0, 0.0, 1.5)},
                                        {Term::constant(1.0)}, line, 1.0));
    out.push_back(MetricProfile::create("warpb", {Term::constant(1.0)},
                                        {Term::constant(1.0), Term::power(1.0, 0.0, 2.0)}, line,
                                        1.0));
    return out;
  }();
  return catalog;
}

const MetricProfile& builtin_profile(const std::string& name) {
  for (const auto& p : builtin_catalog()) {
    if (p.name() == name) return p;
  }
  throw Error(ErrorKind::UnknownProfile, "no built-in profile named '" + name + "'");
}

std::string_view to_string(CausalCharacter c) noexcept {
  switch (c) {
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Zero: return "zero";
  }
  return "unknown";
}

}  // namespace lorlab
