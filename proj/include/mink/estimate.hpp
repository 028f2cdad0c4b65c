#pragma once

// Box-dimension fits and windowed Minkowski-content estimates over a
// geometric eps schedule.

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mink/tube.hpp"

namespace mink {

/// Geometric eps sequence from eps_max down to eps_min (both included) with a
/// constant ratio and at least points_per_decade points per decade.
class EpsSchedule {
 public:
  EpsSchedule(double eps_max, double eps_min, int points_per_decade = 8);

  double eps_max() const { return eps_max_; }
  double eps_min() const { return eps_min_; }
  int points_per_decade() const { return points_per_decade_; }
  const std::vector<double>& values() const { return values_; }
  double decades() const;
  /// Consecutive ratio values[i+1] / values[i], in (0, 1).
  double ratio() const { return ratio_; }

 private:
  double eps_max_;
  double eps_min_;
  int points_per_decade_;
  double ratio_;
  std::vector<double> values_;
};

struct DimensionFit {
  double fitted_d = 0.0;
  double ci_halfwidth = 0.0;  // 95% t-interval on the slope plus backend error
  double residual = 0.0;      // max |log meas - fitted line|
  double slope = 0.0;
  std::vector<std::pair<double, double>> trace;  // (log eps, log meas), schedule order
};

/// Least-squares slope m of log meas against log eps; fitted_d = N - m.
DimensionFit box_dimension_fit(const TubeFunction& f, const EpsSchedule& sched);

enum class Verdict { measurable, nondegenerate, degenerate_zero, degenerate_infinite, inconclusive };

std::string_view to_string(Verdict v);

struct ContentOptions {
  double window_decades = 2.0;
  // Defaults to 0.02 for deterministic backends, 0.05 for stochastic ones.
  std::optional<double> rel_tol;
  double zero_floor = 1e-12;
  // Per-decade drift of q beyond which the content is called divergent.
  double divergence_rate = 0.05;
};

struct ContentEstimate {
  double s = 0.0;
  int ambient_n = 1;
  double lower = 0.0;
  double upper = 0.0;
  double gamma_norm = 1.0;  // gamma_ball(N - s)
  double normalized_lower = 0.0;
  double normalized_upper = 0.0;
  // Largest relative backend error over the window.
  double backend_rel_error = 0.0;
  double rel_tol = 0.02;
  double zero_floor = 1e-12;
  double divergence_rate = 0.05;
  Verdict verdict = Verdict::inconclusive;
  // The window extrema sit at the window's ends, so they may still be moving.
  bool lower_at_window_edge = false;
  bool upper_at_window_edge = false;
  std::vector<std::pair<double, double>> window_trace;  // (eps, q) inside the window
  std::vector<std::pair<double, double>> full_trace;    // (eps, q) over the schedule

  double midpoint() const { return 0.5 * (lower + upper); }
  double normalized_midpoint() const { return 0.5 * (normalized_lower + normalized_upper); }
  double normalized_spread() const { return normalized_upper - normalized_lower; }
};

/// q(eps) = meas(U_eps) / eps^(N - s); lower and upper are the min and max of q
/// over the last window_decades decades of the schedule.
ContentEstimate content_estimate(const TubeFunction& f, double s, const EpsSchedule& sched,
                                 const ContentOptions& opts = {});

/// Classifies the window of an estimate. Divergence is tested at a lag of
/// one decade: q must change by more than the divergence rate at every lag pair.
Verdict measurability_verdict(const ContentEstimate& est, double rel_tol);

/// Default schedule for a realized set: eps_max = hull / 10, eps_min = the
/// truncation bound, or 6 decades below eps_max when nothing was truncated.
EpsSchedule default_schedule(const RealizedSet& set, int points_per_decade = 8);

}  // namespace mink
