// Copyright 2026 The AOGrasp Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AOGRASP_GEOM_NEIGHBORS_HPP_
#define AOGRASP_GEOM_NEIGHBORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::geom {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

// Result of a neighbor query: ascending distance, ties by lower index.
struct NeighborList {
  std::vector<std::size_t> indices;
  std::vector<double> distances;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

// Uniform-grid spatial hash over a fixed point set.
//
// Results are exactly those of a brute-force scan ordered by (squared
// distance, index); the grid only prunes cells that provably cannot hold a
// better candidate. Immutable after construction and safe to query from many
// threads at once.
class NeighborIndex {
 public:
  explicit NeighborIndex(std::span<const Point3> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point3>& points() const { return points_; }

  // The min(k, size()) nearest points. Throws if the index is empty or k == 0.
  NeighborList knn(const Point3& query, std::size_t k) const;

  // Index of the single nearest point (lowest index on ties).
  std::size_t nearest(const Point3& query) const;

  // All points with squared distance <= r*r, nearest first, truncated to
  // max_count. Throws if the index is empty or r < 0.
  NeighborList radius(const Point3& query, double r, std::size_t max_count = kUnlimited) const;

 private:
  using CellCoord = std::array<std::int64_t, 3>;

  CellCoord cell_of(const Point3& p) const;
  std::size_t flat(std::int64_t x, std::int64_t y, std::int64_t z) const;

  std::vector<Point3> points_;
  Point3 origin_ = Point3::Zero();
  double cell_size_ = 1.0;
  CellCoord dims_{1, 1, 1};
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_points_;
};

NeighborList knn(const PointCloud& cloud, const Point3& query, std::size_t k);

NeighborList radius_neighbors(const PointCloud& cloud, const Point3& query, double r,
                              std::size_t max_count = kUnlimited);

// Greedy farthest point sampling from seed_index. Each subsequent pick
// maximizes the distance to the already chosen set (lower index on ties,
// chosen points excluded). Throws if m is 0 or exceeds the cloud size.
std::vector<std::size_t> farthest_point_sample(const PointCloud& cloud, std::size_t m,
                                               std::size_t seed_index = 0);

}  // namespace aograsp::geom

#endif  // AOGRASP_GEOM_NEIGHBORS_HPP_
