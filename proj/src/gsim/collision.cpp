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

#include "aograsp/gsim/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace aograsp::gsim {

namespace {

// Projection interval of the local-frame triangle onto `axis` against the
// box radius along it.
bool separated_on(const Vector3& axis, const Vector3& half, const Vector3& v0, const Vector3& v1, const Vector3& v2,
                  double tol) {
  const double len2 = axis.squaredNorm();
  if (len2 < 1e-30) return false;
  const double p0 = axis.dot(v0), p1 = axis.dot(v1), p2 = axis.dot(v2);
  const double r = half.x() * std::abs(axis.x()) + half.y() * std::abs(axis.y()) + half.z() * std::abs(axis.z());
  const double slack = tol * std::sqrt(len2);
  return std::min({p0, p1, p2}) > r + slack || std::max({p0, p1, p2}) < -r - slack;
}

using Polygon = std::vector<Vector3>;

// Keeps the part of the polygon with sign * p[axis] <= limit.
Polygon clip_plane(const Polygon& poly, int axis, double sign, double limit) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector3& cur = poly[i];
    const Vector3& nxt = poly[(i + 1) % n];
    const double dc = sign * cur[axis] - limit;
    const double dn = sign * nxt[axis] - limit;
    if (dc <= 0.0) out.push_back(cur);
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
      const double s = dc / (dc - dn);
      Vector3 x = cur + s * (nxt - cur);
      x[axis] = sign * limit;  // land exactly on the plane
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

OrientedBox OrientedBox::inflated(double d) const {
  OrientedBox b = *this;
  b.half = (half.array() + d).max(0.0).matrix();
  return b;
}

bool box_intersects_triangle(const OrientedBox& box, const Point3& a, const Point3& b, const Point3& c,
                             double tol) {
  const Vector3 v0 = box.to_local(a), v1 = box.to_local(b), v2 = box.to_local(c);
  const Vector3& e = box.half;
  for (int i = 0; i < 3; ++i) {
    if (std::min({v0[i], v1[i], v2[i]}) > e[i] + tol || std::max({v0[i], v1[i], v2[i]}) < -e[i] - tol) return false;
  }
  const Vector3 f[3] = {v1 - v0, v2 - v1, v0 - v2};
  if (separated_on(f[0].cross(f[1]), e, v0, v1, v2, tol)) return false;
  for (int i = 0; i < 3; ++i) {
    const Vector3 u = Vector3::Unit(i);
    for (const auto& edge : f) {
      if (separated_on(u.cross(edge), e, v0, v1, v2, tol)) return false;
    }
  }
  return true;
}

std::vector<Point3> clip_triangle_to_box(const OrientedBox& box, const Point3& a, const Point3& b, const Point3& c) {
  Polygon poly = {box.to_local(a), box.to_local(b), box.to_local(c)};
  for (int axis = 0; axis < 3 && !poly.empty(); ++axis) {
    poly = clip_plane(poly, axis, 1.0, box.half[axis]);
    if (!poly.empty()) poly = clip_plane(poly, axis, -1.0, box.half[axis]);
  }
  std::vector<Point3> out;
  out.reserve(poly.size());
  for (const auto& p : poly) out.push_back(box.center + box.axes * p);
  return out;
}

double polygon_area(const std::vector<Point3>& polygon) {
  if (polygon.size() < 3) return 0.0;
  Vector3 sum = Vector3::Zero();
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
    sum += (polygon[i] - polygon[0]).cross(polygon[i + 1] - polygon[0]);
  }
  return 0.5 * sum.norm();
}

CollisionScene::CollisionScene(const artobj::ArticulatedObject& obj, const artobj::JointState& state) {
  const auto posed = artobj::posed_vertices(obj, artobj::forward_kinematics(obj, state));
  link_count_ = obj.links().size();
  by_link_.resize(link_count_);
  link_lo_.assign(link_count_, Point3::Constant(std::numeric_limits<double>::infinity()));
  link_hi_.assign(link_count_, Point3::Constant(-std::numeric_limits<double>::infinity()));
  for (std::size_t l = 0; l < link_count_; ++l) {
    const auto& tris = obj.links()[l].triangles;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      PosedTriangle pt;
      pt.a = posed[l][tris[t][0]];
      pt.b = posed[l][tris[t][1]];
      pt.c = posed[l][tris[t][2]];
      pt.link = static_cast<std::int32_t>(l);
      pt.triangle = static_cast<std::uint32_t>(t);
      pt.lo = pt.a.cwiseMin(pt.b).cwiseMin(pt.c);
      pt.hi = pt.a.cwiseMax(pt.b).cwiseMax(pt.c);
      link_lo_[l] = link_lo_[l].cwiseMin(pt.lo);
      link_hi_[l] = link_hi_[l].cwiseMax(pt.hi);
      by_link_[l].push_back(triangles_.size());
      triangles_.push_back(pt);
    }
  }
}

std::vector<std::size_t> CollisionScene::candidates(const OrientedBox& box, const std::vector<bool>& links) const {
  const Vector3 ext = box.axes.cwiseAbs() * box.half + Vector3::Constant(kCollisionTolerance);
  const Point3 lo = box.center - ext, hi = box.center + ext;
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < link_count_; ++l) {
    if (!links.empty() && !links[l]) continue;
    if ((link_lo_[l].array() > hi.array()).any() || (link_hi_[l].array() < lo.array()).any()) continue;
    for (auto i : by_link_[l]) {
      const auto& t = triangles_[i];
      if ((t.lo.array() > hi.array()).any() || (t.hi.array() < lo.array()).any()) continue;
      out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> CollisionScene::intersecting(const OrientedBox& box, const std::vector<bool>& links) const {
  std::vector<std::size_t> out;
  for (auto i : candidates(box, links)) {
    const auto& t = triangles_[i];
    if (box_intersects_triangle(box, t.a, t.b, t.c)) out.push_back(i);
  }
  return out;
}

bool CollisionScene::collides(const OrientedBox& box, const std::vector<bool>& links) const {
  for (auto i : candidates(box, links)) {
    const auto& t = triangles_[i];
    if (box_intersects_triangle(box, t.a, t.b, t.c)) return true;
  }
  // No surface crossing: the box is wholly inside or outside each link.
  for (std::size_t l = 0; l < link_count_; ++l) {
    if (!links.empty() && !links[l]) continue;
    if ((box.center.array() < link_lo_[l].array()).any() || (box.center.array() > link_hi_[l].array()).any()) continue;
    if (winding_number(l, box.center) >= 0.5) return true;
  }
  return false;
}

double CollisionScene::winding_number(std::size_t link, const Point3& p) const {
  double total = 0.0;
  for (auto i : by_link_[link]) {
    const auto& t = triangles_[i];
    const Vector3 a = t.a - p, b = t.b - p, c = t.c - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    total += 2.0 * std::atan2(num, den);
  }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace aograsp::gsim
