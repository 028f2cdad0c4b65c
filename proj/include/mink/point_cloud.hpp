#pragma once

// Approximate tube backends for finite point sets in R^N.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mink/tube.hpp"

namespace mink {

class PointCloud {
 public:
  /// Throws DomainError unless nonempty, all rows of arity ambient_n, all finite.
  PointCloud(int ambient_n, std::vector<std::vector<double>> rows);

  int ambient_n() const { return ambient_n_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(ambient_n_); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(ambient_n_),
            static_cast<std::size_t>(ambient_n_)};
  }
  double min_coord(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
  double max_coord(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }

 private:
  int ambient_n_;
  std::vector<double> coords_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Cartesian product of two finite point sets on the line, as a cloud in R^2.
PointCloud product_cloud(std::span<const double> xs, std::span<const double> ys);

inline constexpr int kMaxMonteCarloDimension = 6;

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Hit-or-miss estimate over the cloud's bounding box padded by eps. Sample i
/// draws its coordinates from a counter-based stream keyed by (seed, i), so
/// the estimate is independent of thread partitioning.
McEstimate mc_tube_measure(const PointCloud& cloud, double eps, std::size_t n_samples,
                           std::uint64_t seed);

inline constexpr std::size_t kDefaultCellBudget = 100'000'000;

struct GridEstimate {
  double estimate = 0.0;
  double bound = 0.0;  // |true - estimate| <= bound
  double lower = 0.0;
  double upper = 0.0;
  std::size_t cells = 0;
};

/// Raster estimate from the exact Euclidean distance transform of the cloud
/// sampled at cell centers (separable lower envelopes of parabolas). Cells
/// whose center lies within eps - h (h = half cell diagonal) are certainly
/// inside the neighborhood, beyond eps + h certainly outside.
GridEstimate grid_tube_measure(const PointCloud& cloud, double eps, double resolution,
                               std::size_t cell_budget = kDefaultCellBudget);

/// Monte Carlo tube with common random numbers across eps.
TubeFunction mc_tube(PointCloud cloud, std::size_t n_samples, std::uint64_t seed);

/// Grid tube at resolution eps * resolution_fraction.
TubeFunction grid_tube(PointCloud cloud, double resolution_fraction = 1.0 / 16.0,
                       std::size_t cell_budget = kDefaultCellBudget);

}  // namespace mink
