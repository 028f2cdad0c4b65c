#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "mink/errors.hpp"
#include "mink/parallel.hpp"
#include "mink/point_cloud.hpp"

namespace mink {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) for coordinate `axis` of sample `index`.
double counter_uniform(std::uint64_t key, std::uint64_t index, int axis) {
  const std::uint64_t bits =
      splitmix64(key ^ splitmix64(index * kMaxMonteCarloDimension + static_cast<std::uint64_t>(axis)));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

using Cell = std::array<std::int64_t, kMaxMonteCarloDimension>;

std::uint64_t cell_hash(const Cell& c, int n) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (int d = 0; d < n; ++d) h = splitmix64(h ^ static_cast<std::uint64_t>(c[static_cast<std::size_t>(d)]));
  return h;
}

// Uniform grid of cell size eps; buckets may merge on hash collisions, which
// only adds candidates since membership is decided by the true distance.
class SpatialHash {
 public:
  SpatialHash(const PointCloud& cloud, double eps, std::span<const double> origin)
      : cloud_(cloud), eps_(eps), origin_(origin.begin(), origin.end()) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      buckets_[cell_hash(cell_of(cloud.point(i)), cloud.ambient_n())].push_back(
          static_cast<std::uint32_t>(i));
    }
  }

  Cell cell_of(std::span<const double> x) const {
    Cell c{};
    for (std::size_t d = 0; d < x.size(); ++d) {
      c[d] = static_cast<std::int64_t>(std::floor((x[d] - origin_[d]) / eps_));
    }
    return c;
  }

  bool within(std::span<const double> x) const {
    const int n = cloud_.ambient_n();
    const Cell home = cell_of(x);
    const double eps2 = eps_ * eps_;
    int neighbors = 1;
    for (int d = 0; d < n; ++d) neighbors *= 3;
    for (int code = 0; code < neighbors; ++code) {
      Cell c = home;
      int rest = code;
      for (int d = 0; d < n; ++d) {
        c[static_cast<std::size_t>(d)] += rest % 3 - 1;
        rest /= 3;
      }
      const auto it = buckets_.find(cell_hash(c, n));
      if (it == buckets_.end()) continue;
      for (std::uint32_t idx : it->second) {
        const auto p = cloud_.point(idx);
        double dist2 = 0.0;
        for (int d = 0; d < n; ++d) {
          const double diff = x[static_cast<std::size_t>(d)] - p[static_cast<std::size_t>(d)];
          dist2 += diff * diff;
        }
        if (dist2 <= eps2) return true;
      }
    }
    return false;
  }

 private:
  const PointCloud& cloud_;
  double eps_;
  std::vector<double> origin_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace

McEstimate mc_tube_measure(const PointCloud& cloud, double eps, std::size_t n_samples,
                           std::uint64_t seed) {
  const int n = cloud.ambient_n();
  if (n > kMaxMonteCarloDimension) {
    throw UnsupportedError("mc_tube_measure: ambient dimension " + std::to_string(n) +
                           " exceeds " + std::to_string(kMaxMonteCarloDimension));
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("mc_tube_measure: eps must be positive");
  if (n_samples < 1000) throw DomainError("mc_tube_measure: n_samples must be >= 1000");

  std::vector<double> lo(static_cast<std::size_t>(n));
  std::vector<double> width(static_cast<std::size_t>(n));
  double volume = 1.0;
  for (int d = 0; d < n; ++d) {
    lo[static_cast<std::size_t>(d)] = cloud.min_coord(d) - eps;
    width[static_cast<std::size_t>(d)] = cloud.max_coord(d) - cloud.min_coord(d) + 2.0 * eps;
    volume *= width[static_cast<std::size_t>(d)];
  }
  const SpatialHash hash(cloud, eps, lo);
  const std::uint64_t key = splitmix64(seed);

  constexpr std::size_t kBlock = 1u << 14;
  const std::size_t blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    std::array<double, kMaxMonteCarloDimension> x{};
    const std::size_t end = std::min(n_samples, (b + 1) * kBlock);
    std::size_t count = 0;
    for (std::size_t i = b * kBlock; i < end; ++i) {
      for (int d = 0; d < n; ++d) {
        const auto u = static_cast<std::size_t>(d);
        x[u] = lo[u] + width[u] * counter_uniform(key, i, d);
      }
      if (hash.within(std::span<const double>(x.data(), static_cast<std::size_t>(n)))) ++count;
    }
    hits[b] = count;
  });
  const auto total_hits = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
  const double p = static_cast<double>(total_hits) / static_cast<double>(n_samples);
  return {volume * p, volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

TubeFunction mc_tube(PointCloud cloud, std::size_t n_samples, std::uint64_t seed) {
  if (cloud.ambient_n() > kMaxMonteCarloDimension) {
    throw UnsupportedError("mc_tube: ambient dimension too large");
  }
  auto shared = std::make_shared<const PointCloud>(std::move(cloud));
  return TubeFunction(shared->ambient_n(), TubeKind::monte_carlo, ErrorModel{0.0, true},
                      [shared, n_samples, seed](double eps) {
                        const McEstimate e = mc_tube_measure(*shared, eps, n_samples, seed);
                        return TubeSample{e.estimate, e.std_error};
                      });
}

}  // namespace mink
