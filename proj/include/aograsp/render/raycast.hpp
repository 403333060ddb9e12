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

#ifndef AOGRASP_RENDER_RAYCAST_HPP_
#define AOGRASP_RENDER_RAYCAST_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::render {

using geom::Point3;
using geom::Vector3;

struct SceneTriangle {
  Point3 a, b, c;
  std::int32_t link = 0;
  std::uint32_t triangle = 0;  // index within the link's mesh
};

struct RayHit {
  double t = 0.0;
  double u = 0.0;  // barycentric weight of vertex b
  double v = 0.0;  // barycentric weight of vertex c
  std::int32_t link = 0;
  std::uint32_t triangle = 0;
};

// Posed triangle soup with a bounding volume hierarchy for nearest-hit ray
// queries. Equal-distance hits resolve to the lower (link, triangle) pair, so
// results do not depend on traversal order.
class TriangleScene {
 public:
  explicit TriangleScene(std::vector<SceneTriangle> triangles);

  // All link meshes of `obj` posed at `state`.
  static TriangleScene from_object(const artobj::ArticulatedObject& obj, const artobj::JointState& state);

  std::optional<RayHit> intersect(const Point3& origin, const Vector3& dir) const;

  const std::vector<SceneTriangle>& triangles() const { return triangles_; }
  Point3 bounds_min() const { return lo_; }
  Point3 bounds_max() const { return hi_; }

 private:
  struct Node {
    Eigen::Vector3d lo, hi;
    std::uint32_t left = 0;   // child index, or first triangle for leaves
    std::uint32_t count = 0;  // > 0 for leaves
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<SceneTriangle> triangles_;
  std::vector<Node> nodes_;
  Point3 lo_ = Point3::Zero();
  Point3 hi_ = Point3::Zero();
};

// Moller-Trumbore; returns (t, u, v) for hits with t > t_min.
std::optional<RayHit> intersect_triangle(const Point3& origin, const Vector3& dir, const SceneTriangle& tri,
                                         double t_min = 1e-9);

}  // namespace aograsp::render

#endif  // AOGRASP_RENDER_RAYCAST_HPP_
