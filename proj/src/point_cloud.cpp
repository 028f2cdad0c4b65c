#include "mink/point_cloud.hpp"

#include <cmath>
#include <string>

#include "mink/errors.hpp"

namespace mink {

PointCloud::PointCloud(int ambient_n, std::vector<std::vector<double>> rows)
    : ambient_n_(ambient_n) {
  if (ambient_n < 1) throw DomainError("PointCloud: ambient dimension must be >= 1");
  if (rows.empty()) throw DomainError("PointCloud: empty cloud");
  const auto n = static_cast<std::size_t>(ambient_n);
  lo_.assign(n, std::numeric_limits<double>::infinity());
  hi_.assign(n, -std::numeric_limits<double>::infinity());
  coords_.reserve(rows.size() * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw DomainError("PointCloud: row of arity " + std::to_string(row.size()) +
                        " in a cloud of dimension " + std::to_string(ambient_n));
    }
    for (std::size_t d = 0; d < n; ++d) {
      if (!std::isfinite(row[d])) throw DomainError("PointCloud: non-finite coordinate");
      coords_.push_back(row[d]);
      lo_[d] = std::min(lo_[d], row[d]);
      hi_[d] = std::max(hi_[d], row[d]);
    }
  }
}

PointCloud product_cloud(std::span<const double> xs, std::span<const double> ys) {
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size() * ys.size());
  for (double x : xs) {
    for (double y : ys) rows.push_back({x, y});
  }
  return PointCloud(2, std::move(rows));
}

}  // namespace mink
