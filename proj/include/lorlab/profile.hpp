#pragma once

// Warped-product metrics g = -a(t) dt^2 + b(t) dx^2 on an open time interval.
// a and b are finite sums of analytic terms so that first derivatives are
// exact; every power term |t - t0|^p carries p > 1, which keeps the metric C^1.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lorlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Numerical tolerances shared across modules. Defaults follow the library contract.
struct Tolerances {
  double eps_null = 1e-12;   // |g(v,v)| band classified as null
  double drift_tol = 1e-6;   // conserved-quantity drift per unit affine parameter
  double cross_tol = 1e-6;   // ODE vs quadrature endpoint agreement
};

struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;

  friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

/// Components (dt/ds, dx/ds) of a tangent vector.
struct TangentVector {
  double tau0 = 0.0;
  double xi0 = 0.0;

  bool is_zero() const noexcept { return tau0 == 0.0 && xi0 == 0.0; }
  friend bool operator==(const TangentVector&, const TangentVector&) = default;
};

enum class TermKind { Constant, Linear, Power, Exponential };

/// One analytic summand.
///   Constant:    c
///   Linear:      c * t
///   Power:       c * |t - center|^exponent   (exponent > 1)
///   Exponential: c * exp(rate * t)
struct Term {
  TermKind kind = TermKind::Constant;
  double coeff = 0.0;
  double center = 0.0;
  double exponent = 2.0;
  double rate = 0.0;

  static Term constant(double c) { return {TermKind::Constant, c, 0.0, 2.0, 0.0}; }
  static Term linear(double c) { return {TermKind::Linear, c, 0.0, 2.0, 0.0}; }
  static Term power(double c, double center, double exponent) {
    return {TermKind::Power, c, center, exponent, 0.0};
  }
  static Term exponential(double c, double rate) {
    return {TermKind::Exponential, c, 0.0, 2.0, rate};
  }

  friend bool operator==(const Term&, const Term&) = default;
};

/// Open interval (lo, hi); either end may be infinite.
struct TimeDomain {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const noexcept { return t > lo && t < hi; }
  bool bounded_above() const noexcept { return hi < kInf; }
  bool bounded_below() const noexcept { return lo > -kInf; }
};

struct ProfileValues {
  double a = 0.0;
  double b = 0.0;
  double da = 0.0;
  double db = 0.0;
};

struct ChristoffelTriple {
  double g000 = 0.0;  // Gamma^0_00 = a'/(2a)
  double g011 = 0.0;  // Gamma^0_11 = b'/(2a)
  double g101 = 0.0;  // Gamma^1_01 = Gamma^1_10 = b'/(2b)
};

enum class CausalCharacter { Timelike, Null, Spacelike, Zero };

struct VectorClass {
  CausalCharacter character = CausalCharacter::Zero;
  double squared_norm = 0.0;
};

/// Number of grid points used to verify the declared positivity floor.
inline constexpr int kFloorGridPoints = 10000;
/// Half-width of the window used in place of an infinite domain end when
/// checking the floor on a grid.
inline constexpr double kFloorWindow = 20.0;

class MetricProfile {
 public:
  /// Validates the term lists and the declared floor; throws Error(InvalidProfile).
  static MetricProfile create(std::string name, std::vector<Term> terms_a,
                              std::vector<Term> terms_b, TimeDomain domain, double alpha);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& terms_a() const noexcept { return terms_a_; }
  const std::vector<Term>& terms_b() const noexcept { return terms_b_; }
  const TimeDomain& domain() const noexcept { return domain_; }
  double alpha() const noexcept { return alpha_; }

  bool contains(double t) const noexcept { return domain_.contains(t); }
  bool contains(const SpacetimePoint& p) const noexcept { return domain_.contains(p.t); }

  /// a, b, a', b' at t. Throws DomainExceeded outside the open domain.
  ProfileValues eval(double t) const;
  /// Same as eval() without the domain check; for quadrature nodes that are
  /// interior by construction.
  ProfileValues eval_unchecked(double t) const noexcept;

  /// True when b is identically 1 (only constant terms summing to one).
  bool b_is_unit() const noexcept;

  /// Times where some power term is not smooth (its center), inside the domain.
  std::vector<double> kinks() const;

  /// Time reflection t -> -t: a'(t) = a(-t), b'(t) = b(-t), domain mirrored.
  MetricProfile reflected() const;

  /// Smallest a and b on the floor-check grid; used by validation and tests.
  std::pair<double, double> grid_minima() const;

 private:
  MetricProfile() = default;

  std::string name_;
  std::vector<Term> terms_a_;
  std::vector<Term> terms_b_;
  TimeDomain domain_;
  double alpha_ = 0.0;
};

/// a(t), b(t) and their derivatives.
ProfileValues eval_profile(const MetricProfile& profile, double t);

ChristoffelTriple christoffel(const MetricProfile& profile, double t);

VectorClass classify_vector(const MetricProfile& profile, const SpacetimePoint& p,
                            const TangentVector& v, double eps_null = Tolerances{}.eps_null);

inline bool is_causal(CausalCharacter c) noexcept {
  return c == CausalCharacter::Timelike || c == CausalCharacter::Null;
}

/// Built-in profiles: minkowski, strip01, exp2t, c1power, warpb.
const std::vector<MetricProfile>& builtin_catalog();

/// Looks a name up in the built-in catalog; throws Error(UnknownProfile).
const MetricProfile& builtin_profile(const std::string& name);

std::string_view to_string(CausalCharacter c) noexcept;

}  // namespace lorlab
