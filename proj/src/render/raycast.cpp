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

#include "aograsp/render/raycast.hpp"

#include <algorithm>
#include <limits>

#include "aograsp/common/error.hpp"

namespace aograsp::render {

namespace {

constexpr std::uint32_t kLeafSize = 4;

// Lexicographic (t, link, triangle) order makes the nearest hit unique.
bool closer(const RayHit& a, const RayHit& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.link != b.link) return a.link < b.link;
  return a.triangle < b.triangle;
}

// Slab test; returns the entry distance or +inf on miss.
double box_entry(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, const Point3& o, const Vector3& inv) {
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    double ta = (lo[a] - o[a]) * inv[a];
    double tb = (hi[a] - o[a]) * inv[a];
    if (ta > tb) std::swap(ta, tb);
    // NaN from 0 * inf means the ray lies in the slab plane; keep it.
    if (ta == ta) t0 = std::max(t0, ta);
    if (tb == tb) t1 = std::min(t1, tb);
    if (t0 > t1) return std::numeric_limits<double>::infinity();
  }
  return t0;
}

}  // namespace

std::optional<RayHit> intersect_triangle(const Point3& origin, const Vector3& dir, const SceneTriangle& tri,
                                         double t_min) {
  constexpr double kEdgeSlack = 1e-12;
  const Vector3 e1 = tri.b - tri.a;
  const Vector3 e2 = tri.c - tri.a;
  const Vector3 p = dir.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-300) return std::nullopt;
  const double inv = 1.0 / det;
  const Vector3 s = origin - tri.a;
  const double u = s.dot(p) * inv;
  if (u < -kEdgeSlack || u > 1.0 + kEdgeSlack) return std::nullopt;
  const Vector3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < -kEdgeSlack || u + v > 1.0 + kEdgeSlack) return std::nullopt;
  const double t = e2.dot(q) * inv;
  if (!(t > t_min)) return std::nullopt;
  RayHit hit;
  hit.t = t;
  hit.u = std::clamp(u, 0.0, 1.0);
  hit.v = std::clamp(v, 0.0, 1.0 - hit.u);
  hit.link = tri.link;
  hit.triangle = tri.triangle;
  return hit;
}

TriangleScene::TriangleScene(std::vector<SceneTriangle> triangles) : triangles_(std::move(triangles)) {
  if (triangles_.empty()) return;
  if (triangles_.size() > std::numeric_limits<std::uint32_t>::max() / 2) throw Error("scene too large");
  nodes_.reserve(2 * triangles_.size() / kLeafSize + 2);
  build(0, static_cast<std::uint32_t>(triangles_.size()));
  lo_ = nodes_[0].lo;
  hi_ = nodes_[0].hi;
}

std::uint32_t TriangleScene::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  Eigen::Vector3d clo = lo, chi = hi;
  for (std::uint32_t i = begin; i < end; ++i) {
    const auto& t = triangles_[i];
    lo = lo.cwiseMin(t.a).cwiseMin(t.b).cwiseMin(t.c);
    hi = hi.cwiseMax(t.a).cwiseMax(t.b).cwiseMax(t.c);
    const Eigen::Vector3d c = (t.a + t.b + t.c) / 3.0;
    clo = clo.cwiseMin(c);
    chi = chi.cwiseMax(c);
  }
  nodes_[id].lo = lo;
  nodes_[id].hi = hi;
  if (end - begin <= kLeafSize) {
    nodes_[id].left = begin;
    nodes_[id].count = end - begin;
    return id;
  }
  int axis = 0;
  (chi - clo).maxCoeff(&axis);
  const std::uint32_t mid = begin + (end - begin) / 2;
  auto key = [axis](const SceneTriangle& t) { return t.a[axis] + t.b[axis] + t.c[axis]; };
  std::nth_element(triangles_.begin() + begin, triangles_.begin() + mid, triangles_.begin() + end,
                   [&](const SceneTriangle& x, const SceneTriangle& y) {
                     const double kx = key(x), ky = key(y);
                     if (kx != ky) return kx < ky;
                     if (x.link != y.link) return x.link < y.link;
                     return x.triangle < y.triangle;
                   });
  build(begin, mid);
  nodes_[id].left = build(mid, end);
  nodes_[id].count = 0;
  return id;
}

std::optional<RayHit> TriangleScene::intersect(const Point3& origin, const Vector3& dir) const {
  if (nodes_.empty()) return std::nullopt;
  const Vector3 inv = dir.cwiseInverse();
  std::optional<RayHit> best;
  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const std::uint32_t id = stack[--top];
    const Node& node = nodes_[id];
    const double entry = box_entry(node.lo, node.hi, origin, inv);
    // `>` rather than `>=` keeps equal-distance candidates for tie-breaking.
    if (entry == std::numeric_limits<double>::infinity() || (best && entry > best->t)) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.left; i < node.left + node.count; ++i) {
        auto hit = intersect_triangle(origin, dir, triangles_[i]);
        if (hit && (!best || closer(*hit, *best))) best = hit;
      }
    } else {
      // Left child is stored right after its parent.
      stack[top++] = node.left;
      stack[top++] = id + 1;
    }
  }
  return best;
}

TriangleScene TriangleScene::from_object(const artobj::ArticulatedObject& obj, const artobj::JointState& state) {
  const auto posed = artobj::posed_vertices(obj, artobj::forward_kinematics(obj, state));
  std::vector<SceneTriangle> tris;
  for (std::size_t l = 0; l < obj.links().size(); ++l) {
    const auto& link = obj.links()[l];
    for (std::size_t t = 0; t < link.triangles.size(); ++t) {
      const auto& tri = link.triangles[t];
      tris.push_back({posed[l][tri[0]], posed[l][tri[1]], posed[l][tri[2]], static_cast<std::int32_t>(l),
                      static_cast<std::uint32_t>(t)});
    }
  }
  return TriangleScene(std::move(tris));
}

}  // namespace aograsp::render
