#include "mink/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "mink/errors.hpp"
#include "mink/gamma.hpp"
#include "mink/parallel.hpp"

namespace mink {

EpsSchedule::EpsSchedule(double eps_max, double eps_min, int points_per_decade)
    : eps_max_(eps_max), eps_min_(eps_min), points_per_decade_(points_per_decade) {
  if (!(eps_min > 0.0) || !(eps_max > eps_min) || !std::isfinite(eps_max)) {
    throw DomainError("EpsSchedule: need 0 < eps_min < eps_max < inf");
  }
  if (points_per_decade < 4) throw DomainError("EpsSchedule: points_per_decade must be >= 4");
  const double span = std::log10(eps_max / eps_min) * points_per_decade;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span - 1e-9)));
  ratio_ = std::pow(eps_min / eps_max, 1.0 / static_cast<double>(steps));
  values_.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) {
    values_.push_back(eps_max * std::pow(ratio_, static_cast<double>(i)));
  }
  values_.push_back(eps_min);
}

double EpsSchedule::decades() const { return std::log10(eps_max_ / eps_min_); }

namespace {

std::vector<TubeSample> evaluate(const TubeFunction& f, const std::vector<double>& eps) {
  std::vector<TubeSample> out(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) { out[i] = f.sample(eps[i]); });
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(out[i].value > 0.0) || !std::isfinite(out[i].value)) {
      throw DataError("tube value " + std::to_string(out[i].value) + " at eps=" +
                      std::to_string(eps[i]) + " is not positive and finite",
                      eps[i]);
    }
  }
  return out;
}

}  // namespace

DimensionFit box_dimension_fit(const TubeFunction& f, const EpsSchedule& sched) {
  const auto& eps = sched.values();
  const std::vector<TubeSample> samples = evaluate(f, eps);
  const std::size_t n = eps.size();
  if (n < 3) throw DomainError("box_dimension_fit: schedule needs at least 3 points");

  DimensionFit fit;
  fit.trace.reserve(n);
  double backend = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rel = samples[i].abs_error / samples[i].value;
    if (!f.deterministic() && rel >= 0.01) {
      throw DataError("box_dimension_fit: stochastic standard error above 1% at eps=" +
                          std::to_string(eps[i]),
                      eps[i]);
    }
    if (f.deterministic()) backend = std::max(backend, std::log1p(rel));
    fit.trace.emplace_back(std::log(eps[i]), std::log(samples[i].value));
  }

  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : fit.trace) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double sabs = 0.0;
  for (const auto& [x, y] : fit.trace) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    sabs += std::abs(x - mx);
  }
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : fit.trace) {
    const double r = y - (intercept + fit.slope * x);
    sse += r * r;
    fit.residual = std::max(fit.residual, std::abs(r));
  }
  const double dof = static_cast<double>(n - 2);
  const double slope_se = std::sqrt(sse / dof / sxx);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(dist, 0.975);
  // Worst-case slope shift when every log value moves by at most `backend`.
  const double systematic = backend * sabs / sxx;
  fit.ci_halfwidth = t * slope_se + systematic;
  const double n_amb = f.ambient_n();
  fit.fitted_d = std::clamp(n_amb - fit.slope, 0.0, n_amb);
  return fit;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::measurable: return "measurable";
    case Verdict::nondegenerate: return "nondegenerate";
    case Verdict::degenerate_zero: return "degenerate_zero";
    case Verdict::degenerate_infinite: return "degenerate_infinite";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ContentEstimate content_estimate(const TubeFunction& f, double s, const EpsSchedule& sched,
                                 const ContentOptions& opts) {
  const int n = f.ambient_n();
  if (!(s >= 0.0 && s <= n)) {
    throw DomainError("content_estimate: s=" + std::to_string(s) + " outside [0, " +
                      std::to_string(n) + "]");
  }
  if (!(opts.window_decades > 0.0)) throw DomainError("content_estimate: window must be positive");
  const auto& eps = sched.values();
  const std::vector<TubeSample> samples = evaluate(f, eps);

  ContentEstimate est;
  est.s = s;
  est.ambient_n = n;
  est.gamma_norm = gamma_ball(n - s);
  est.rel_tol = opts.rel_tol.value_or(f.deterministic() ? 0.02 : 0.05);
  est.zero_floor = opts.zero_floor;
  est.divergence_rate = opts.divergence_rate;

  const double window_top = sched.eps_min() * std::pow(10.0, opts.window_decades) * (1.0 + 1e-9);
  est.lower = std::numeric_limits<double>::infinity();
  est.upper = -std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double q = samples[i].value / std::pow(eps[i], n - s);
    est.full_trace.emplace_back(eps[i], q);
    if (eps[i] > window_top) continue;
    const std::size_t w = est.window_trace.size();
    est.window_trace.emplace_back(eps[i], q);
    est.backend_rel_error = std::max(est.backend_rel_error, samples[i].abs_error / samples[i].value);
    if (q < est.lower) {
      est.lower = q;
      argmin = w;
    }
    if (q > est.upper) {
      est.upper = q;
      argmax = w;
    }
  }
  const std::size_t last = est.window_trace.size() - 1;
  est.lower_at_window_edge = argmin == 0 || argmin == last;
  est.upper_at_window_edge = argmax == 0 || argmax == last;
  est.normalized_lower = est.lower / est.gamma_norm;
  est.normalized_upper = est.upper / est.gamma_norm;
  est.verdict = measurability_verdict(est, est.rel_tol);
  return est;
}

Verdict measurability_verdict(const ContentEstimate& est, double rel_tol) {
  const auto& w = est.window_trace;
  if (w.empty()) return Verdict::inconclusive;
  if (std::isinf(est.lower) && est.lower > 0) return Verdict::degenerate_infinite;
  if (!std::isfinite(est.lower) || !std::isfinite(est.upper)) return Verdict::inconclusive;
  if (est.upper < est.zero_floor) return Verdict::degenerate_zero;
  if (!(est.lower > 0.0)) return Verdict::inconclusive;

  // Compare each q with the one a decade larger in eps (w is in descending eps).
  std::size_t pairs = 0;
  std::size_t growing = 0;
  std::size_t shrinking = 0;
  const double up = std::log1p(est.divergence_rate);
  std::size_t j = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    while (j + 1 <= i && w[j + 1].first >= 10.0 * w[i].first * (1.0 - 1e-9)) ++j;
    if (!(w[j].first >= 10.0 * w[i].first * (1.0 - 1e-9))) continue;
    const double decades = std::log10(w[j].first / w[i].first);
    const double rate = std::log(w[i].second / w[j].second) / decades;
    ++pairs;
    if (rate > up) ++growing;
    if (rate < -up) ++shrinking;
  }
  if (pairs > 0 && growing == pairs) return Verdict::degenerate_infinite;
  if (pairs > 0 && shrinking == pairs) return Verdict::degenerate_zero;
  if (est.upper / est.lower <= 1.0 + rel_tol) return Verdict::measurable;
  return pairs > 0 ? Verdict::nondegenerate : Verdict::inconclusive;
}

EpsSchedule default_schedule(const RealizedSet& set, int points_per_decade) {
  const double eps_max = set.hull_length > 0.0 ? set.hull_length / 10.0 : 0.1;
  double eps_min = set.truncation_eps > 0.0 ? set.truncation_eps : eps_max * 1e-6;
  eps_min = std::min(eps_min, eps_max / 10.0);
  eps_min = std::max(eps_min, set.tube.resolution_floor());
  return EpsSchedule(eps_max, eps_min, points_per_decade);
}

}  // namespace mink
