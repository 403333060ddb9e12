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

#include "aograsp/geom/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "aograsp/common/error.hpp"

namespace aograsp::geom {

namespace {

struct Candidate {
  double d2;
  std::size_t index;
  bool operator<(const Candidate& other) const {
    return d2 < other.d2 || (d2 == other.d2 && index < other.index);
  }
};

NeighborList to_list(std::vector<Candidate>& found) {
  std::sort(found.begin(), found.end());
  NeighborList out;
  out.indices.reserve(found.size());
  out.distances.reserve(found.size());
  for (const auto& c : found) {
    out.indices.push_back(c.index);
    out.distances.push_back(std::sqrt(c.d2));
  }
  return out;
}

}  // namespace

NeighborIndex::NeighborIndex(std::span<const Point3> points)
    : points_(points.begin(), points.end()) {
  if (points_.empty()) {
    cell_start_.assign(2, 0);
    return;
  }
  Point3 lo = points_.front();
  Point3 hi = points_.front();
  for (const auto& p : points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = (hi - lo).maxCoeff();
  // About two points per cell for a volumetric cloud.
  const double per_axis =
      std::max(1.0, std::ceil(std::cbrt(static_cast<double>(points_.size()) / 2.0)));
  cell_size_ = extent > 0.0 ? extent / per_axis : 1.0;
  origin_ = lo;
  for (int a = 0; a < 3; ++a) {
    dims_[a] = static_cast<std::int64_t>(std::floor((hi[a] - lo[a]) / cell_size_)) + 1;
  }

  const std::size_t cells = static_cast<std::size_t>(dims_[0] * dims_[1] * dims_[2]);
  cell_start_.assign(cells + 1, 0);
  std::vector<std::size_t> cell_ids(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const CellCoord c = cell_of(points_[i]);
    cell_ids[i] = flat(c[0], c[1], c[2]);
    ++cell_start_[cell_ids[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_points_.resize(points_.size());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  // Ascending point order inside each cell.
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cell_points_[fill[cell_ids[i]]++] = static_cast<std::uint32_t>(i);
  }
}

NeighborIndex::CellCoord NeighborIndex::cell_of(const Point3& p) const {
  CellCoord c;
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor((p[a] - origin_[a]) / cell_size_);
    const double clamped = std::clamp(f, 0.0, static_cast<double>(dims_[a] - 1));
    c[a] = static_cast<std::int64_t>(clamped);
  }
  return c;
}

std::size_t NeighborIndex::flat(std::int64_t x, std::int64_t y, std::int64_t z) const {
  return static_cast<std::size_t>((z * dims_[1] + y) * dims_[0] + x);
}

NeighborList NeighborIndex::knn(const Point3& query, std::size_t k) const {
  if (points_.empty()) throw Error("empty input");
  if (k == 0) throw Error("knn requires k >= 1");
  k = std::min(k, points_.size());

  // Max-heap of the best k candidates so far.
  std::priority_queue<Candidate> best;
  const CellCoord center = cell_of(query);
  // Slack that absorbs rounding in cell assignment of boundary points.
  const double slack = 1e-9 * (cell_size_ + query.cwiseAbs().maxCoeff() + origin_.cwiseAbs().maxCoeff());

  for (std::int64_t ring = 0;; ++ring) {
    CellCoord lo, hi;
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max<std::int64_t>(center[a] - ring, 0);
      hi[a] = std::min<std::int64_t>(center[a] + ring, dims_[a] - 1);
    }
    for (std::int64_t z = lo[2]; z <= hi[2]; ++z) {
      for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
        for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
          const std::int64_t cheb = std::max({std::abs(x - center[0]), std::abs(y - center[1]),
                                              std::abs(z - center[2])});
          if (cheb != ring) continue;
          const std::size_t cell = flat(x, y, z);
          for (std::uint32_t s = cell_start_[cell]; s < cell_start_[cell + 1]; ++s) {
            const std::size_t i = cell_points_[s];
            const Candidate cand{squared_distance(points_[i], query), i};
            if (best.size() < k) {
              best.push(cand);
            } else if (cand < best.top()) {
              best.pop();
              best.push(cand);
            }
          }
        }
      }
    }

    // Distance below which every unvisited point is guaranteed to lie outside.
    double bound = std::numeric_limits<double>::infinity();
    bool exhausted = true;
    for (int a = 0; a < 3; ++a) {
      if (center[a] - ring > 0) {
        exhausted = false;
        bound = std::min(bound, query[a] - (origin_[a] + static_cast<double>(center[a] - ring) * cell_size_));
      }
      if (center[a] + ring < dims_[a] - 1) {
        exhausted = false;
        bound = std::min(bound, origin_[a] + static_cast<double>(center[a] + ring + 1) * cell_size_ - query[a]);
      }
    }
    if (exhausted) break;
    bound -= slack;
    if (best.size() == k && bound > 0.0 && best.top().d2 < bound * bound) break;
  }

  std::vector<Candidate> found;
  found.reserve(best.size());
  while (!best.empty()) {
    found.push_back(best.top());
    best.pop();
  }
  return to_list(found);
}

std::size_t NeighborIndex::nearest(const Point3& query) const { return knn(query, 1).indices.front(); }

NeighborList NeighborIndex::radius(const Point3& query, double r, std::size_t max_count) const {
  if (points_.empty()) throw Error("empty input");
  if (!(r >= 0.0)) throw Error("radius must be non-negative");
  const double r2 = r * r;
  CellCoord lo, hi;
  for (int a = 0; a < 3; ++a) {
    const double max_cell = static_cast<double>(dims_[a] - 1);
    const double fl = std::floor((query[a] - r - origin_[a]) / cell_size_) - 1.0;
    const double fh = std::floor((query[a] + r - origin_[a]) / cell_size_) + 1.0;
    if (fh < 0.0 || fl > max_cell) return {};
    lo[a] = static_cast<std::int64_t>(std::clamp(fl, 0.0, max_cell));
    hi[a] = static_cast<std::int64_t>(std::clamp(fh, 0.0, max_cell));
  }
  std::vector<Candidate> found;
  for (std::int64_t z = lo[2]; z <= hi[2]; ++z) {
    for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
      for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
        const std::size_t cell = flat(x, y, z);
        for (std::uint32_t s = cell_start_[cell]; s < cell_start_[cell + 1]; ++s) {
          const std::size_t i = cell_points_[s];
          const double d2 = squared_distance(points_[i], query);
          if (d2 <= r2) found.push_back({d2, i});
        }
      }
    }
  }
  if (found.size() > max_count) {
    std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(max_count), found.end());
    found.resize(max_count);
  }
  return to_list(found);
}

NeighborList knn(const PointCloud& cloud, const Point3& query, std::size_t k) {
  if (cloud.empty()) throw Error("empty input");
  return NeighborIndex(cloud.points).knn(query, k);
}

NeighborList radius_neighbors(const PointCloud& cloud, const Point3& query, double r,
                              std::size_t max_count) {
  if (cloud.empty()) throw Error("empty input");
  return NeighborIndex(cloud.points).radius(query, r, max_count);
}

std::vector<std::size_t> farthest_point_sample(const PointCloud& cloud, std::size_t m,
                                               std::size_t seed_index) {
  const std::size_t n = cloud.size();
  if (m == 0) throw Error("farthest_point_sample requires m >= 1");
  if (m > n) {
    throw Error("farthest_point_sample: m = " + std::to_string(m) + " exceeds cloud size " +
                std::to_string(n));
  }
  if (seed_index >= n) throw Error("farthest_point_sample: seed index out of range");

  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  std::vector<std::size_t> picks;
  picks.reserve(m);
  std::size_t current = seed_index;
  for (;;) {
    picks.push_back(current);
    chosen[current] = 1;
    if (picks.size() == m) break;
    const Point3& c = cloud.points[current];
    std::size_t best = n;
    double best_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      min_d2[i] = std::min(min_d2[i], squared_distance(cloud.points[i], c));
      if (min_d2[i] > best_d2) {
        best_d2 = min_d2[i];
        best = i;
      }
    }
    current = best;
  }
  return picks;
}

}  // namespace aograsp::geom
