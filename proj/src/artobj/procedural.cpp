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

#include "aograsp/artobj/procedural.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"

namespace aograsp::artobj {

namespace {

constexpr double kHandleGap = 0.04;   // clearance between a bar and its panel
constexpr double kClearance = 0.005;  // drawer tray to body

// Appends axis-aligned boxes with outward-facing triangle winding.
class MeshBuilder {
 public:
  MeshBuilder(std::string name, SemanticTag tag) {
    link_.name = std::move(name);
    link_.tag = tag;
  }

  void box(const Point3& lo, const Point3& hi) {
    const auto base = static_cast<std::uint32_t>(link_.vertices.size());
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
          link_.vertices.emplace_back(i ? hi.x() : lo.x(), j ? hi.y() : lo.y(), k ? hi.z() : lo.z());
        }
      }
    }
    auto vid = [base](int i, int j, int k) { return base + static_cast<std::uint32_t>(i + 2 * j + 4 * k); };
    for (int axis = 0; axis < 3; ++axis) {
      const int b = (axis + 1) % 3;
      const int c = (axis + 2) % 3;
      for (int side = 0; side < 2; ++side) {
        std::array<std::uint32_t, 4> quad;
        const int corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        for (int q = 0; q < 4; ++q) {
          int idx[3];
          idx[axis] = side;
          idx[b] = corners[q][0];
          idx[c] = corners[q][1];
          quad[q] = vid(idx[0], idx[1], idx[2]);
        }
        Vector3 outward = Vector3::Zero();
        outward[axis] = side ? 1.0 : -1.0;
        const auto& v = link_.vertices;
        const Vector3 n = (v[quad[1]] - v[quad[0]]).cross(v[quad[2]] - v[quad[0]]);
        if (n.dot(outward) < 0.0) std::swap(quad[1], quad[3]);
        link_.triangles.push_back({quad[0], quad[1], quad[2]});
        link_.triangles.push_back({quad[0], quad[2], quad[3]});
      }
    }
  }

  // Box from a center and half extents given along three axis-aligned unit
  // directions.
  void oriented_box(const Point3& center, const Vector3& d1, double h1, const Vector3& d2, double h2,
                    const Vector3& d3, double h3) {
    const Vector3 half = d1.cwiseAbs() * h1 + d2.cwiseAbs() * h2 + d3.cwiseAbs() * h3;
    box(center - half, center + half);
  }

  Link take() { return std::move(link_); }

 private:
  Link link_;
};

// Open-sided box: five walls of thickness t around [lo, hi], omitting the face
// whose outward normal is `open` (+x or +z).
void open_box(MeshBuilder& mesh, const Point3& lo, const Point3& hi, double t, const Vector3& open) {
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      Vector3 normal = Vector3::Zero();
      normal[axis] = side ? 1.0 : -1.0;
      if (normal == open) continue;
      Point3 wlo = lo;
      Point3 whi = hi;
      if (side) {
        wlo[axis] = hi[axis] - t;
      } else {
        whi[axis] = lo[axis] + t;
      }
      mesh.box(wlo, whi);
    }
  }
}

// Where and how a handle attaches to its movable panel.
struct HandleSite {
  Point3 surface_anchor;  // on the panel's outer face
  Vector3 panel_normal;   // outward normal of that face
  Point3 edge_anchor;     // on the panel's free edge, for lips
  Vector3 edge_normal;    // outward direction of the free edge
  Vector3 along;          // handle length direction
  double length = 0.1;
};

void build_handle(MeshBuilder& mesh, const HandleSite& site, HandleKind kind, double rh) {
  const double half_len = 0.5 * site.length;
  switch (kind) {
    case HandleKind::automatic:
    case HandleKind::bar: {
      const Vector3 cross = site.panel_normal.cross(site.along);
      mesh.oriented_box(site.surface_anchor + site.panel_normal * (kHandleGap + rh), site.panel_normal, rh, cross,
                        rh, site.along, half_len);
      for (double s : {-1.0, 1.0}) {
        mesh.oriented_box(site.surface_anchor + site.panel_normal * (0.5 * kHandleGap) + site.along * s * (half_len - rh),
                          site.panel_normal, 0.5 * kHandleGap, cross, 0.8 * rh, site.along, rh);
      }
      break;
    }
    case HandleKind::knob: {
      const Vector3 cross = site.panel_normal.cross(site.along);
      const double depth = 0.5 * (kHandleGap + 2.0 * rh);
      mesh.oriented_box(site.surface_anchor + site.panel_normal * depth, site.panel_normal, depth, cross, 1.5 * rh,
                        site.along, 1.5 * rh);
      break;
    }
    case HandleKind::lip: {
      const double reach = 0.5 * (0.03 + 2.0 * rh);
      const Vector3 cross = site.edge_normal.cross(site.along);
      mesh.oriented_box(site.edge_anchor + site.edge_normal * reach, site.edge_normal, reach, cross, rh, site.along,
                        half_len);
      break;
    }
  }
}

// Revolute axis along the hinge edge, signed so that positive q swings the
// panel's outer face outward.
Vector3 hinge_axis(const Vector3& edge_dir, const Point3& hinge_origin, const Point3& handle_point,
                   const Vector3& outward) {
  Vector3 lever = handle_point - hinge_origin;
  lever -= lever.dot(edge_dir) * edge_dir;
  return edge_dir.cross(lever).dot(outward) >= 0.0 ? edge_dir : Vector3(-edge_dir);
}

Joint revolute(const std::string& name, const Vector3& axis, const Point3& origin) {
  Joint j;
  j.name = name;
  j.type = JointType::revolute;
  j.parent = "body";
  j.child = "panel";
  j.axis = axis;
  j.origin = origin;
  j.lower = 0.0;
  j.upper = std::numbers::pi / 2.0;
  j.closed_value = 0.0;
  return j;
}

Joint fixed_handle() {
  Joint j;
  j.name = "handle_mount";
  j.type = JointType::fixed;
  j.parent = "panel";
  j.child = "handle";
  j.axis = Vector3::UnitZ();
  return j;
}

struct Dims {
  double w, h, d, t;
};

ArticulatedObject make_cabinet(const ProceduralParams& p, Rng& rng, const Dims& dims) {
  const auto [w, h, d, t] = dims;
  MeshBuilder body("body", SemanticTag::base);
  open_box(body, {-d / 2, -w / 2, 0.0}, {d / 2, w / 2, h}, t, Vector3::UnitX());
  MeshBuilder panel("panel", SemanticTag::movable);
  panel.box({d / 2, -w / 2, 0.0}, {d / 2 + t, w / 2, h});

  const double margin_frac = rng.uniform(0.08, 0.15);
  const double along_frac = rng.uniform(0.4, 0.6);
  HandleSite site;
  site.panel_normal = Vector3::UnitX();
  Point3 origin;
  Vector3 edge;
  switch (p.hinge) {
    case HingeSide::right:
    case HingeSide::left: {
      const double s = p.hinge == HingeSide::right ? 1.0 : -1.0;
      origin = {d / 2, s * w / 2, 0.0};
      edge = Vector3::UnitZ();
      const double y = -s * (w / 2 - margin_frac * w);
      site.surface_anchor = {d / 2 + t, y, along_frac * h};
      site.edge_anchor = {d / 2 + t / 2, -s * w / 2, along_frac * h};
      site.edge_normal = Vector3(0.0, -s, 0.0);
      site.along = Vector3::UnitZ();
      site.length = 0.4 * h;
      break;
    }
    case HingeSide::top:
    case HingeSide::bottom: {
      const bool top = p.hinge == HingeSide::top;
      origin = {d / 2, 0.0, top ? h : 0.0};
      edge = Vector3::UnitY();
      const double z = top ? margin_frac * h : h - margin_frac * h;
      site.surface_anchor = {d / 2 + t, (along_frac - 0.5) * w, z};
      site.edge_anchor = {d / 2 + t / 2, (along_frac - 0.5) * w, top ? 0.0 : h};
      site.edge_normal = top ? Vector3(-Vector3::UnitZ()) : Vector3(Vector3::UnitZ());
      site.along = Vector3::UnitY();
      site.length = 0.4 * w;
      break;
    }
  }
  const HandleKind kind = p.handle == HandleKind::automatic ? HandleKind::bar : p.handle;
  MeshBuilder handle("handle", SemanticTag::actionable);
  build_handle(handle, site, kind, p.handle_radius);

  const Vector3 axis = hinge_axis(edge, origin, site.surface_anchor, Vector3::UnitX());
  return ArticulatedObject("cabinet_door", {body.take(), panel.take(), handle.take()},
                           {revolute("door_hinge", axis, origin), fixed_handle()});
}

ArticulatedObject make_drawer(const ProceduralParams& p, Rng& rng, const Dims& dims) {
  const auto [w, h, d, t] = dims;
  MeshBuilder body("body", SemanticTag::base);
  open_box(body, {-d / 2, -w / 2, 0.0}, {d / 2, w / 2, h}, t, Vector3::UnitX());

  MeshBuilder panel("panel", SemanticTag::movable);
  panel.box({d / 2, -w / 2, 0.0}, {d / 2 + t, w / 2, h});
  const double c = kClearance;
  const Point3 tray_lo{-d / 2 + t + c, -w / 2 + t + c, t + c};
  const Point3 tray_hi{d / 2, w / 2 - t - c, 0.8 * h};
  open_box(panel, tray_lo, tray_hi, t, Vector3::UnitZ());

  HandleSite site;
  site.panel_normal = Vector3::UnitX();
  site.along = Vector3::UnitY();
  const double z = rng.uniform(0.6, 0.8) * h;
  const double y = rng.uniform(-0.1, 0.1) * w;
  site.surface_anchor = {d / 2 + t, y, z};
  site.edge_anchor = {d / 2 + t / 2, y, h};
  site.edge_normal = Vector3::UnitZ();
  site.length = 0.4 * w;
  const HandleKind kind = p.handle == HandleKind::automatic ? HandleKind::bar : p.handle;
  MeshBuilder handle("handle", SemanticTag::actionable);
  build_handle(handle, site, kind, p.handle_radius);

  Joint slide;
  slide.name = "drawer_slide";
  slide.type = JointType::prismatic;
  slide.parent = "body";
  slide.child = "panel";
  slide.axis = Vector3::UnitX();
  slide.origin = {d / 2, 0.0, h / 2};
  slide.lower = 0.0;
  slide.upper = 0.3;
  slide.closed_value = 0.0;
  return ArticulatedObject("drawer", {body.take(), panel.take(), handle.take()}, {slide, fixed_handle()});
}

// Shared by box_lid and bin_swing_lid: an open-top body with a hinged lid.
ArticulatedObject make_lidded(const std::string& name, const ProceduralParams& p, Rng& rng, const Dims& dims,
                              HandleKind default_kind) {
  const auto [w, h, d, t] = dims;
  MeshBuilder body("body", SemanticTag::base);
  open_box(body, {-d / 2, -w / 2, 0.0}, {d / 2, w / 2, h}, t, Vector3::UnitZ());
  MeshBuilder panel("panel", SemanticTag::movable);
  panel.box({-d / 2, -w / 2, h}, {d / 2, w / 2, h + t});

  // Hinge edge and the opposite free edge, described by the free edge's
  // outward direction in the lid plane.
  Vector3 free_dir = Vector3::UnitX();
  switch (p.hinge) {
    case HingeSide::top: free_dir = Vector3::UnitX(); break;      // hinge at the back
    case HingeSide::bottom: free_dir = -Vector3::UnitX(); break;  // hinge at the front
    case HingeSide::left: free_dir = Vector3::UnitY(); break;     // hinge on the viewer's left
    case HingeSide::right: free_dir = -Vector3::UnitY(); break;
  }
  const bool along_y = std::abs(free_dir.x()) > 0.5;
  const double half_span = along_y ? d / 2 : w / 2;  // lid half-extent along free_dir
  const double edge_len = along_y ? w : d;
  const Vector3 along = along_y ? Vector3(Vector3::UnitY()) : Vector3(Vector3::UnitX());
  const Point3 origin = Point3(0.0, 0.0, h) - free_dir * half_span;

  const double along_off = rng.uniform(-0.1, 0.1) * edge_len;
  const double margin = rng.uniform(0.08, 0.15) * 2.0 * half_span;
  HandleSite site;
  site.panel_normal = Vector3::UnitZ();
  site.along = along;
  site.length = 0.35 * edge_len;
  site.surface_anchor = Point3(0.0, 0.0, h + t) + free_dir * (half_span - margin) + along * along_off;
  site.edge_anchor = Point3(0.0, 0.0, h + t / 2) + free_dir * half_span + along * along_off;
  site.edge_normal = free_dir;
  const HandleKind kind = p.handle == HandleKind::automatic ? default_kind : p.handle;
  MeshBuilder handle("handle", SemanticTag::actionable);
  build_handle(handle, site, kind, p.handle_radius);

  const Vector3 axis = hinge_axis(along, origin, site.edge_anchor, Vector3::UnitZ());
  return ArticulatedObject(name, {body.take(), panel.take(), handle.take()},
                           {revolute("lid_hinge", axis, origin), fixed_handle()});
}

}  // namespace

ArticulatedObject generate_procedural(ProceduralKind kind, const ProceduralParams& params, std::uint64_t seed) {
  if (!(params.size >= 0.2 && params.size <= 1.0)) throw Error("procedural size must lie in [0.2, 1.0] m");
  if (!(params.handle_radius >= 0.005 && params.handle_radius <= 0.03)) {
    throw Error("procedural handle radius must lie in [5, 30] mm");
  }
  Rng rng(seed);
  const double s = params.size;
  const double t = std::clamp(0.04 * s, 0.01, 0.025);
  switch (kind) {
    case ProceduralKind::cabinet_door:
      return make_cabinet(params, rng, {s * rng.uniform(0.8, 1.2), s * rng.uniform(0.8, 1.2), s * rng.uniform(0.6, 0.9), t});
    case ProceduralKind::drawer:
      return make_drawer(params, rng, {s * rng.uniform(0.8, 1.2), s * rng.uniform(0.5, 0.8), s * rng.uniform(0.7, 1.0), t});
    case ProceduralKind::box_lid:
      return make_lidded("box_lid", params, rng,
                         {s * rng.uniform(0.8, 1.2), s * rng.uniform(0.5, 0.7), s * rng.uniform(0.7, 1.0), t},
                         HandleKind::lip);
    case ProceduralKind::bin_swing_lid:
      return make_lidded("bin_swing_lid", params, rng,
                         {s * rng.uniform(0.5, 0.7), s * rng.uniform(1.0, 1.3), s * rng.uniform(0.5, 0.7), t},
                         HandleKind::bar);
  }
  throw Error("unknown procedural kind");
}

std::string_view to_string(ProceduralKind kind) {
  switch (kind) {
    case ProceduralKind::box_lid: return "box_lid";
    case ProceduralKind::cabinet_door: return "cabinet_door";
    case ProceduralKind::drawer: return "drawer";
    case ProceduralKind::bin_swing_lid: return "bin_swing_lid";
  }
  return "cabinet_door";
}

std::string_view to_string(HingeSide side) {
  switch (side) {
    case HingeSide::left: return "left";
    case HingeSide::right: return "right";
    case HingeSide::top: return "top";
    case HingeSide::bottom: return "bottom";
  }
  return "right";
}

std::string_view to_string(HandleKind kind) {
  switch (kind) {
    case HandleKind::automatic: return "auto";
    case HandleKind::bar: return "bar";
    case HandleKind::knob: return "knob";
    case HandleKind::lip: return "lip";
  }
  return "auto";
}

std::optional<ProceduralKind> parse_procedural_kind(std::string_view text) {
  for (auto k : {ProceduralKind::box_lid, ProceduralKind::cabinet_door, ProceduralKind::drawer,
                 ProceduralKind::bin_swing_lid}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<HingeSide> parse_hinge_side(std::string_view text) {
  for (auto s : {HingeSide::left, HingeSide::right, HingeSide::top, HingeSide::bottom}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<HandleKind> parse_handle_kind(std::string_view text) {
  for (auto k : {HandleKind::automatic, HandleKind::bar, HandleKind::knob, HandleKind::lip}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

}  // namespace aograsp::artobj
