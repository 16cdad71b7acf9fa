#pragma once

// Adaptive 7/15-point Gauss-Kronrod panel quadrature.
//
// Panels are bisected, largest estimated error first, until the summed
// |Kronrod - Gauss| difference falls below max(abs_tol, rel_tol * |I|).
// All nodes are interior to their panel, so integrands are never evaluated at
// the interval ends; integration right up to an open domain boundary is safe.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace lorlab::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_panels = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

template <class F>
Panel gk15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

inline bool by_error(const Panel& a, const Panel& b) { return a.error < b.error; }

}  // namespace detail

/// Integral of f over [lo, hi] (lo may exceed hi; the sign follows).
/// Interior breakpoints split the initial panel set, e.g. at kinks of f.
template <class F>
Result integrate(F&& f, double lo, double hi, std::span<const double> breakpoints = {},
                 const Options& opts = {}) {
  if (lo == hi) return {};
  if (lo > hi) {
    auto r = integrate(f, hi, lo, breakpoints, opts);
    r.value = -r.value;
    return r;
  }
  std::vector<detail::Panel> heap;
  heap.reserve(64);
  double left = lo;
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > left && c < hi) {
      heap.push_back(detail::gk15(f, left, c));
      left = c;
    }
  }
  heap.push_back(detail::gk15(f, left, hi));
  std::make_heap(heap.begin(), heap.end(), detail::by_error);

  auto totals = [&heap] {
    double v = 0.0, e = 0.0;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= opts.max_panels) {
      return {value, error, static_cast<int>(heap.size()), false};
    }
    std::pop_heap(heap.begin(), heap.end(), detail::by_error);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const double scale = std::max({1.0, std::abs(worst.lo), std::abs(worst.hi)});
    if (worst.hi - worst.lo < 1e-12 * scale) {
      // Narrower panels would put Kronrod nodes on the panel ends.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), detail::by_error);
      auto [v, e] = totals();
      return {v, e, static_cast<int>(heap.size()), false};
    }
    heap.push_back(detail::gk15(f, worst.lo, mid));
    std::push_heap(heap.begin(), heap.end(), detail::by_error);
    heap.push_back(detail::gk15(f, mid, worst.hi));
    std::push_heap(heap.begin(), heap.end(), detail::by_error);
    std::tie(value, error) = totals();
  }
  return {value, error, static_cast<int>(heap.size()), true};
}

}  // namespace lorlab::quad
