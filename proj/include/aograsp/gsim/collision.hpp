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

#ifndef AOGRASP_GSIM_COLLISION_HPP_
#define AOGRASP_GSIM_COLLISION_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::gsim {

using geom::Point3;
using geom::Vector3;

inline constexpr double kCollisionTolerance = 1e-9;

// Box with center, orthonormal axes (columns) and half extents.
struct OrientedBox {
  Point3 center = Point3::Zero();
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
  Vector3 half = Vector3::Zero();

  // Same box grown (or shrunk, for negative d) by d on every face.
  OrientedBox inflated(double d) const;
  Point3 to_local(const Point3& p) const { return axes.transpose() * (p - center); }
};

// Separating-axis test over the 13 candidate axes. Touching within `tol`
// counts as intersecting.
bool box_intersects_triangle(const OrientedBox& box, const Point3& a, const Point3& b, const Point3& c,
                             double tol = kCollisionTolerance);

// Part of the triangle inside the box (Sutherland-Hodgman), in world
// coordinates; empty when they do not overlap.
std::vector<Point3> clip_triangle_to_box(const OrientedBox& box, const Point3& a, const Point3& b, const Point3& c);

double polygon_area(const std::vector<Point3>& polygon);

struct PosedTriangle {
  Point3 a, b, c;
  std::int32_t link = 0;
  std::uint32_t triangle = 0;
  Point3 lo, hi;  // bounding box
};

// Posed link meshes for box queries. A box collides with a link when it
// meets one of its triangles or lies inside the link's closed volume
// (generalized winding number >= 1/2 at the box center).
class CollisionScene {
 public:
  CollisionScene(const artobj::ArticulatedObject& obj, const artobj::JointState& state);

  const std::vector<PosedTriangle>& triangles() const { return triangles_; }
  std::size_t link_count() const { return link_count_; }

  // Indices of triangles on included links whose bounding box overlaps the
  // box's world-aligned bounds, ascending. An empty mask includes every link.
  std::vector<std::size_t> candidates(const OrientedBox& box, const std::vector<bool>& links = {}) const;

  // Triangles (of included links) that intersect the box, ascending.
  std::vector<std::size_t> intersecting(const OrientedBox& box, const std::vector<bool>& links = {}) const;

  bool collides(const OrientedBox& box, const std::vector<bool>& links = {}) const;

  double winding_number(std::size_t link, const Point3& p) const;

 private:
  std::vector<PosedTriangle> triangles_;
  std::vector<std::vector<std::size_t>> by_link_;
  std::vector<Point3> link_lo_, link_hi_;
  std::size_t link_count_ = 0;
};

}  // namespace aograsp::gsim

#endif  // AOGRASP_GSIM_COLLISION_HPP_
