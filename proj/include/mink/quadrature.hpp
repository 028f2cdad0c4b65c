#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with bisection.
//
// The panel with the largest error estimate is split until the summed
// estimate |K15 - G7| falls under max(abs_tol, rel_tol * |integral|).
// Splitting order depends only on the integrand values, so results are
// reproducible bit-for-bit.

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "mink/errors.hpp"

namespace mink {

struct QuadratureOptions {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  std::size_t max_panels = std::size_t{1} << 20;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const {
    // Ties broken on position so heap order never depends on insertion history.
    if (error != other.error) return error < other.error;
    return lo > other.lo;
  }
};

template <typename F>
Panel gauss_kronrod_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

template <typename F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi,
                                    const QuadratureOptions& opts) {
  if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0)) {
    throw DomainError("integrate_adaptive: a positive tolerance is required");
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gauss_kronrod_panel(f, lo, hi));
  std::size_t panels = 1;
  double total = heap.top().value;
  double error = heap.top().error;

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (error > target()) {
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (panels + 2 > opts.max_panels || !(mid > worst.lo && mid < worst.hi)) {
      throw ConvergenceError(
          "integrate_adaptive: tolerance not reached within " + std::to_string(panels) +
              " panels (achieved error " + std::to_string(error) + ")",
          error);
    }
    heap.pop();
    const detail::Panel left = detail::gauss_kronrod_panel(f, worst.lo, mid);
    const detail::Panel right = detail::gauss_kronrod_panel(f, mid, worst.hi);
    panels += 2;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in heap order to shed drift from the incremental updates.
  std::vector<detail::Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  QuadratureResult result;
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    result.value += it->value;
    result.abs_error += it->error;
  }
  result.panels = panels;
  return result;
}

}  // namespace mink
