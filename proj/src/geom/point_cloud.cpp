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

#include "aograsp/geom/point_cloud.hpp"

#include <cmath>
#include <string>

#include "aograsp/common/error.hpp"

namespace aograsp::geom {

namespace {

void check_length(std::size_t got, std::size_t want, const char* name) {
  if (got != 0 && got != want) {
    throw Error(std::string("point cloud attribute '") + name + "' has " + std::to_string(got) +
                " entries for " + std::to_string(want) + " points");
  }
}

template <typename T>
void copy_selected(const std::vector<T>& from, std::span<const std::size_t> indices,
                   std::vector<T>& to) {
  if (from.empty()) return;
  to.reserve(indices.size());
  for (std::size_t i : indices) to.push_back(from[i]);
}

}  // namespace

void PointCloud::validate() const {
  const std::size_t n = points.size();
  check_length(normals.size(), n, "normals");
  check_length(curvature.size(), n, "curvature");
  check_length(link_id.size(), n, "link_id");
  check_length(surface.size(), n, "surface_id");
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].allFinite()) throw Error("non-finite point at index " + std::to_string(i));
  }
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (std::abs(normals[i].norm() - 1.0) > 1e-9) {
      throw Error("normal at index " + std::to_string(i) + " is not unit length");
    }
  }
  for (std::size_t i = 0; i < curvature.size(); ++i) {
    if (!(curvature[i] >= 0.0 && curvature[i] <= 1.0)) {
      throw Error("curvature at index " + std::to_string(i) + " outside [0, 1]");
    }
  }
}

PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> indices) {
  PointCloud out;
  out.frame = cloud.frame;
  copy_selected(cloud.points, indices, out.points);
  copy_selected(cloud.normals, indices, out.normals);
  copy_selected(cloud.curvature, indices, out.curvature);
  copy_selected(cloud.link_id, indices, out.link_id);
  copy_selected(cloud.surface, indices, out.surface);
  return out;
}

std::pair<PointCloud, Point3> center_at_mean(const PointCloud& cloud) {
  if (cloud.empty()) throw Error("empty input");
  Point3 sum = Point3::Zero();
  for (const auto& p : cloud.points) sum += p;
  const Point3 centroid = sum / static_cast<double>(cloud.size());
  PointCloud out = cloud;
  for (auto& p : out.points) p -= centroid;
  return {std::move(out), centroid};
}

PointCloud translated(const PointCloud& cloud, const Vector3& offset) {
  PointCloud out = cloud;
  for (auto& p : out.points) p += offset;
  return out;
}

}  // namespace aograsp::geom
