#include "mink/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mink/errors.hpp"

namespace mink {

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw DomainError("IntervalUnion: endpoints must be finite");
    }
    if (iv.lo > iv.hi) {
      throw DomainError("IntervalUnion: interval with lo > hi");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  IntervalUnion out;
  for (const auto& iv : intervals) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

double IntervalUnion::total_length() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.length();
  return total;
}

Interval IntervalUnion::hull() const {
  if (intervals_.empty()) return {};
  return {intervals_.front().lo, intervals_.back().hi};
}

double IntervalUnion::hull_length() const { return hull().length(); }

std::vector<double> IntervalUnion::gaps() const {
  std::vector<double> out;
  if (intervals_.size() < 2) return out;
  out.reserve(intervals_.size() - 1);
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    out.push_back(intervals_[i].lo - intervals_[i - 1].hi);
  }
  return out;
}

IntervalUnion IntervalUnion::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("IntervalUnion::scaled: factor must be positive and finite");
  }
  std::vector<Interval> out(intervals_.begin(), intervals_.end());
  for (auto& iv : out) {
    iv.lo *= factor;
    iv.hi *= factor;
  }
  return from_intervals(std::move(out));
}

IntervalUnion IntervalUnion::translated(double offset) const {
  if (!std::isfinite(offset)) throw DomainError("IntervalUnion::translated: non-finite offset");
  std::vector<Interval> out(intervals_.begin(), intervals_.end());
  for (auto& iv : out) {
    iv.lo += offset;
    iv.hi += offset;
  }
  return from_intervals(std::move(out));
}

IntervalUnion make_points(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("make_points: empty point list");
  std::vector<Interval> ivs;
  ivs.reserve(xs.size());
  for (double x : xs) ivs.push_back({x, x});
  return IntervalUnion::from_intervals(std::move(ivs));
}

Construction a_string(double a, std::size_t n_terms) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a_string: a must be positive");
  if (n_terms < 2) throw DomainError("a_string: n_terms must be >= 2");
  std::vector<double> xs;
  xs.reserve(n_terms + 1);
  xs.push_back(0.0);
  for (std::size_t n = 1; n <= n_terms; ++n) {
    xs.push_back(std::pow(static_cast<double>(n), -a));
  }
  Construction c;
  c.generated = n_terms;
  c.truncation_eps = 0.5 * xs.back();
  c.set = make_points(xs);
  return c;
}

Construction alpha_orbit(double alpha, double x0, std::size_t n_terms) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha_orbit: alpha must be > 1");
  }
  if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("alpha_orbit: x0 must lie in (0, 1)");
  if (!(x0 - std::pow(x0, alpha) > 0.0)) {
    throw DomainError("alpha_orbit: first iterate leaves (0, 1)");
  }
  if (n_terms < 1) throw DomainError("alpha_orbit: n_terms must be >= 1");
  constexpr double kUnderflowGuard = 1e-300;
  std::vector<double> xs;
  xs.reserve(n_terms);
  Construction c;
  double x = x0;
  for (std::size_t k = 0; k < n_terms; ++k) {
    if (!(x > kUnderflowGuard && x < 1.0)) {
      c.truncated_early = true;
      break;
    }
    xs.push_back(x);
    x -= std::pow(x, alpha);
  }
  c.generated = xs.size();
  c.truncation_eps = 0.5 * xs.back();
  c.set = make_points(xs);
  return c;
}

int cantor_level_for(double eps, int depth_cap) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cantor_cover: eps must lie in (0, 1)");
  int k = 0;
  // 3^-(k+1) / 2 <= eps, evaluated without accumulating rounding.
  while (0.5 * std::pow(3.0, -(k + 1)) > eps) {
    ++k;
    if (k > depth_cap) {
      throw ResolutionError("cantor_cover: eps=" + std::to_string(eps) +
                            " needs a level beyond the depth cap " +
                            std::to_string(depth_cap));
    }
  }
  return k;
}

IntervalUnion cantor_level(int level) {
  if (level < 0) throw DomainError("cantor_level: negative level");
  if (level > kCantorMaterializeCap) {
    throw ResolutionError("cantor_level: level " + std::to_string(level) +
                          " exceeds the materialization cap " +
                          std::to_string(kCantorMaterializeCap));
  }
  // Left endpoints are m / 3^k with base-3 digits of m in {0, 2}.
  const double scale = std::pow(3.0, level);
  const std::size_t count = std::size_t{1} << level;
  std::vector<Interval> ivs;
  ivs.reserve(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    std::uint64_t m = 0;
    for (int d = level - 1; d >= 0; --d) {
      m = 3 * m + (((bits >> d) & 1u) ? 2 : 0);
    }
    ivs.push_back({static_cast<double>(m) / scale, static_cast<double>(m + 1) / scale});
  }
  return IntervalUnion::from_intervals(std::move(ivs));
}

IntervalUnion cantor_cover(double eps, int depth_cap) {
  return cantor_level(cantor_level_for(eps, depth_cap));
}

double tube_measure_1d(const IntervalUnion& u, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("tube_measure_1d: eps must be finite and >= 0");
  }
  const auto ivs = u.intervals();
  if (ivs.empty()) return 0.0;
  double total = 0.0;
  double run_lo = ivs.front().lo - eps;
  double run_hi = ivs.front().hi + eps;
  for (std::size_t i = 1; i < ivs.size(); ++i) {
    const double lo = ivs[i].lo - eps;
    const double hi = ivs[i].hi + eps;
    if (lo <= run_hi) {
      run_hi = hi;
    } else {
      total += run_hi - run_lo;
      run_lo = lo;
      run_hi = hi;
    }
  }
  return total + (run_hi - run_lo);
}

}  // namespace mink
