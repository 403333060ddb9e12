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

#ifndef AOGRASP_GEOM_POINT_CLOUD_HPP_
#define AOGRASP_GEOM_POINT_CLOUD_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace aograsp::geom {

using Point3 = Eigen::Vector3d;
using Vector3 = Eigen::Vector3d;

// Squared Euclidean distance, written out so that every caller (including
// brute-force reference scans) evaluates the same floating-point expression.
inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dz = a.z() - b.z();
  return dx * dx + dy * dy + dz * dz;
}

// Triangle a point was sampled from, with barycentric weights of the second
// and third vertex (the first vertex weight is 1 - u - v).
struct SurfaceRef {
  std::uint32_t triangle = 0;
  double u = 0.0;
  double v = 0.0;

  bool operator==(const SurfaceRef&) const = default;
};

enum class Frame : std::uint8_t { world, camera };

// Positions plus optional per-point attributes. An attribute is present when
// its array is non-empty, in which case it has one entry per point.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<Vector3> normals;
  std::vector<double> curvature;
  std::vector<std::int32_t> link_id;
  std::vector<SurfaceRef> surface;
  Frame frame = Frame::world;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  bool has_normals() const { return !normals.empty(); }
  bool has_curvature() const { return !curvature.empty(); }
  bool has_link_id() const { return !link_id.empty(); }
  bool has_surface() const { return !surface.empty(); }

  // Throws aograsp::Error naming the first violated invariant: attribute
  // lengths, finite positions, unit normals (1e-9), curvature in [0, 1].
  void validate() const;
};

// Copies the selected points (and every present attribute) in the given order.
PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> indices);

// Returns the cloud translated so its centroid is the origin, together with
// the removed centroid. Throws on an empty cloud.
std::pair<PointCloud, Point3> center_at_mean(const PointCloud& cloud);

// Adds `offset` to every position; the inverse of center_at_mean.
PointCloud translated(const PointCloud& cloud, const Vector3& offset);

}  // namespace aograsp::geom

#endif  // AOGRASP_GEOM_POINT_CLOUD_HPP_
