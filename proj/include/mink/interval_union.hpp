#pragma once

// Exact bounded subsets of the real line as finite unions of closed intervals.

#include <cstddef>
#include <span>
#include <vector>

namespace mink {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Canonical union of disjoint closed intervals: sorted ascending with a strict
/// gap between consecutive members. Degenerate intervals represent points.
/// Immutable once built.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Sorts, merges overlapping or touching intervals. Throws DomainError on
  /// non-finite endpoints or lo > hi.
  static IntervalUnion from_intervals(std::vector<Interval> intervals);

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  double total_length() const;
  Interval hull() const;
  double hull_length() const;

  /// Lengths of the open gaps between consecutive intervals, in order.
  std::vector<double> gaps() const;

  IntervalUnion scaled(double factor) const;
  IntervalUnion translated(double offset) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// A finite set built from an infinite construction, with what was kept.
struct Construction {
  IntervalUnion set;
  std::size_t generated = 0;  // number of points actually produced
  bool truncated_early = false;
  // Below this eps the omitted tail near the accumulation point is no
  // longer covered by the neighborhood, so the tube of the finite set
  // departs from that of the infinite one. Zero when nothing was omitted.
  double truncation_eps = 0.0;
};

IntervalUnion make_points(std::span<const double> xs);

/// {n^-a : 1 <= n <= n_terms} together with 0.
Construction a_string(double a, std::size_t n_terms);

/// Orbit x_{k+1} = x_k - x_k^alpha from x0, k = 0..n_terms-1. Stops early
/// (recorded in the result) if an iterate leaves (0, 1) or drops below 1e-300.
Construction alpha_orbit(double alpha, double x0, std::size_t n_terms);

inline constexpr int kCantorDepthCap = 40;
/// Largest cover that cantor_cover will materialize (2^24 intervals).
inline constexpr int kCantorMaterializeCap = 24;

/// Smallest level k with 3^-(k+1) / 2 <= eps: the level-k middle-thirds cover
/// whose eps-neighborhood coincides with that of the Cantor set.
int cantor_level_for(double eps, int depth_cap = kCantorDepthCap);

/// The 2^k level-k intervals for k = cantor_level_for(eps).
IntervalUnion cantor_cover(double eps, int depth_cap = kCantorDepthCap);

/// Level-k middle-thirds intervals for an explicit k.
IntervalUnion cantor_level(int level);

/// Lebesgue measure of the closed eps-neighborhood, by expanding and merging.
double tube_measure_1d(const IntervalUnion& u, double eps);

}  // namespace mink
