#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mink/errors.hpp"
#include "mink/point_cloud.hpp"

namespace mink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Axis {
  double lo = 0.0;  // left edge of cell 0
  double step = 0.0;
  std::size_t cells = 0;
  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * step; }
};

// out[i] = min_k (c_i - pos[k])^2 + height[k] over the axis centers c_i,
// for strictly increasing pos. Infinite heights are skipped.
void lower_envelope(const std::vector<double>& pos, const std::vector<double>& height,
                    const Axis& axis, std::vector<double>& out) {
  std::vector<std::size_t> hull;
  std::vector<double> starts;  // starts[k]: where parabola hull[k] becomes lowest
  hull.reserve(pos.size());
  starts.reserve(pos.size());
  for (std::size_t q = 0; q < pos.size(); ++q) {
    if (!std::isfinite(height[q])) continue;
    double s = -kInf;
    while (!hull.empty()) {
      const std::size_t p = hull.back();
      s = (height[q] - height[p]) / (2.0 * (pos[q] - pos[p])) + 0.5 * (pos[q] + pos[p]);
      if (s > starts.back()) break;
      hull.pop_back();
      starts.pop_back();
      s = -kInf;
    }
    hull.push_back(q);
    starts.push_back(s);
  }
  out.assign(axis.cells, kInf);
  if (hull.empty()) return;
  std::size_t k = 0;
  for (std::size_t i = 0; i < axis.cells; ++i) {
    const double c = axis.center(i);
    while (k + 1 < hull.size() && starts[k + 1] < c) ++k;
    const double d = c - pos[hull[k]];
    out[i] = d * d + height[hull[k]];
  }
}

struct Counts {
  std::size_t inner = 0;
  std::size_t mid = 0;
  std::size_t outer = 0;
  double inner2 = 0.0;
  double mid2 = 0.0;
  double outer2 = 0.0;

  void tally(const std::vector<double>& row) {
    for (double d2 : row) {
      if (d2 <= outer2) {
        ++outer;
        if (d2 <= mid2) {
          ++mid;
          if (d2 <= inner2) ++inner;
        }
      }
    }
  }
};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void transform_2d(const PointCloud& cloud, const std::vector<Axis>& axes, Counts& counts) {
  std::map<double, std::vector<double>> columns;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    columns[p[0]].push_back(p[1]);
  }
  // Along y within each column of sites.
  std::vector<double> xs;
  std::vector<std::vector<double>> along_y;
  for (auto& [x, ys] : columns) {
    const auto pos = sorted_unique(ys);
    std::vector<double> values;
    lower_envelope(pos, std::vector<double>(pos.size(), 0.0), axes[1], values);
    xs.push_back(x);
    along_y.push_back(std::move(values));
  }
  // Along x for each row of cells.
  std::vector<double> heights(xs.size());
  std::vector<double> row;
  for (std::size_t j = 0; j < axes[1].cells; ++j) {
    for (std::size_t g = 0; g < xs.size(); ++g) heights[g] = along_y[g][j];
    lower_envelope(xs, heights, axes[0], row);
    counts.tally(row);
  }
}

void transform_3d(const PointCloud& cloud, const std::vector<Axis>& axes, Counts& counts) {
  std::map<double, std::map<double, std::vector<double>>> columns;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    columns[p[0]][p[1]].push_back(p[2]);
  }
  const std::size_t ny = axes[1].cells;
  const std::size_t nz = axes[2].cells;
  std::vector<double> xs;
  // along_yz[g][k * ny + j]: squared distance within the plane x = xs[g].
  std::vector<std::vector<double>> along_yz;
  std::vector<double> scratch;
  for (auto& [x, lines] : columns) {
    std::vector<double> ys;
    std::vector<std::vector<double>> along_z;
    for (auto& [y, zs] : lines) {
      const auto pos = sorted_unique(zs);
      std::vector<double> values;
      lower_envelope(pos, std::vector<double>(pos.size(), 0.0), axes[2], values);
      ys.push_back(y);
      along_z.push_back(std::move(values));
    }
    std::vector<double> plane(ny * nz);
    std::vector<double> heights(ys.size());
    for (std::size_t k = 0; k < nz; ++k) {
      for (std::size_t c = 0; c < ys.size(); ++c) heights[c] = along_z[c][k];
      lower_envelope(ys, heights, axes[1], scratch);
      std::copy(scratch.begin(), scratch.end(), plane.begin() + static_cast<std::ptrdiff_t>(k * ny));
    }
    xs.push_back(x);
    along_yz.push_back(std::move(plane));
  }
  std::vector<double> heights(xs.size());
  std::vector<double> row;
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t g = 0; g < xs.size(); ++g) heights[g] = along_yz[g][k * ny + j];
      lower_envelope(xs, heights, axes[0], row);
      counts.tally(row);
    }
  }
}

}  // namespace

GridEstimate grid_tube_measure(const PointCloud& cloud, double eps, double resolution,
                               std::size_t cell_budget) {
  const int n = cloud.ambient_n();
  if (n != 2 && n != 3) throw UnsupportedError("grid_tube_measure: only R^2 and R^3 are supported");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("grid_tube_measure: eps must be positive");
  if (!(resolution > 0.0) || resolution > eps / 8.0) {
    throw DomainError("grid_tube_measure: resolution must lie in (0, eps/8]");
  }
  std::vector<Axis> axes(static_cast<std::size_t>(n));
  const double pad = eps + resolution;
  double cells = 1.0;
  for (int d = 0; d < n; ++d) {
    auto& axis = axes[static_cast<std::size_t>(d)];
    axis.lo = cloud.min_coord(d) - pad;
    axis.step = resolution;
    const double extent = cloud.max_coord(d) - cloud.min_coord(d) + 2.0 * pad;
    const double count = std::ceil(extent / resolution);
    cells *= count;
    if (cells > static_cast<double>(cell_budget)) {
      throw ResolutionError("grid_tube_measure: grid exceeds the cell budget of " +
                            std::to_string(cell_budget));
    }
    axis.cells = static_cast<std::size_t>(count);
  }
  const double half_diag = 0.5 * resolution * std::sqrt(static_cast<double>(n));
  Counts counts;
  counts.mid2 = eps * eps;
  counts.outer2 = (eps + half_diag) * (eps + half_diag);
  counts.inner2 = eps > half_diag ? (eps - half_diag) * (eps - half_diag) : -1.0;
  if (n == 2) {
    transform_2d(cloud, axes, counts);
  } else {
    transform_3d(cloud, axes, counts);
  }
  const double cell_volume = std::pow(resolution, n);
  GridEstimate out;
  out.cells = static_cast<std::size_t>(cells);
  out.estimate = static_cast<double>(counts.mid) * cell_volume;
  out.lower = static_cast<double>(counts.inner) * cell_volume;
  out.upper = static_cast<double>(counts.outer) * cell_volume;
  out.bound = std::max(out.upper - out.estimate, out.estimate - out.lower);
  return out;
}

TubeFunction grid_tube(PointCloud cloud, double resolution_fraction, std::size_t cell_budget) {
  if (!(resolution_fraction > 0.0 && resolution_fraction <= 0.125)) {
    throw DomainError("grid_tube: resolution fraction must lie in (0, 1/8]");
  }
  auto shared = std::make_shared<const PointCloud>(std::move(cloud));
  return TubeFunction(shared->ambient_n(), TubeKind::grid, ErrorModel{0.0, false},
                      [shared, resolution_fraction, cell_budget](double eps) {
                        const GridEstimate g =
                            grid_tube_measure(*shared, eps, eps * resolution_fraction, cell_budget);
                        return TubeSample{g.estimate, g.bound};
                      });
}

}  // namespace mink
