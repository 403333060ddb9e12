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

#include "aograsp/render/renderer.hpp"

#include <limits>

#include "json.hpp"

#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/geom/neighbors.hpp"
#include "aograsp/geom/normals.hpp"
#include "aograsp/render/raycast.hpp"

namespace aograsp::render {

using nlohmann::json;

namespace {

struct PixelHit {
  bool hit = false;
  Point3 point;
  RayHit ray;
};

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d json_vec(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("view record: expected 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

RenderResult render_partial_cloud(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                                  const Camera& camera, const RenderOptions& options) {
  camera.validate();
  if (options.max_points == 0) throw Error("render: max_points must be positive");
  const TriangleScene scene = TriangleScene::from_object(obj, state);

  const std::size_t w = static_cast<std::size_t>(camera.width);
  const std::size_t h = static_cast<std::size_t>(camera.height);
  std::vector<PixelHit> pixels(w * h);
  const std::size_t threads = resolve_thread_count(options.threads);
  // Rows are independent; each pixel writes only its own slot.
  parallel_for(h, threads, [&](std::size_t row) {
    for (std::size_t col = 0; col < w; ++col) {
      const Vector3 dir = camera.ray_direction(col + 0.5, row + 0.5);
      auto hit = scene.intersect(camera.position, dir);
      if (!hit) continue;
      PixelHit& px = pixels[row * w + col];
      px.hit = true;
      px.ray = *hit;
      double t = hit->t;
      if (options.depth_noise_sigma > 0.0) {
        Rng rng(derive_seed(options.noise_seed, row * w + col));
        t += options.depth_noise_sigma * rng.normal();
      }
      px.point = camera.position + t * dir;
    }
  });

  RenderResult result;
  geom::PointCloud all;
  std::vector<std::uint32_t> all_pixels;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!pixels[i].hit) continue;
    all.points.push_back(pixels[i].point);
    all.link_id.push_back(pixels[i].ray.link);
    all.surface.push_back({pixels[i].ray.triangle, pixels[i].ray.u, pixels[i].ray.v});
    all_pixels.push_back(static_cast<std::uint32_t>(i));
  }
  result.hit_count = all.size();
  if (all.empty()) throw Error("object not visible");

  geom::PointCloud kept;
  if (all.size() > options.max_points) {
    const auto idx = geom::farthest_point_sample(all, options.max_points, 0);
    kept = geom::subset(all, idx);
    result.pixel.reserve(idx.size());
    for (auto i : idx) result.pixel.push_back(all_pixels[i]);
  } else {
    kept = std::move(all);
    result.pixel = std::move(all_pixels);
  }
  auto est = geom::estimate_normals_curvature(kept, options.normal_neighbors, camera.position);
  result.cloud = std::move(est.cloud);
  result.degenerate_normals = est.degenerate_count;
  return result;
}

Point3 bounding_box_center(const artobj::ArticulatedObject& obj, const artobj::JointState& state) {
  const auto posed = artobj::posed_vertices(obj, artobj::forward_kinematics(obj, state));
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  bool any = false;
  for (const auto& link : posed) {
    for (const auto& v : link) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
      any = true;
    }
  }
  if (!any) throw Error("bounding_box_center: object has no vertices");
  return 0.5 * (lo + hi);
}

std::string view_to_json(const ViewRecord& view) {
  nlohmann::ordered_json j;
  j["camera"] = {{"position", vec_json(view.camera.position)},
                 {"look_at", vec_json(view.camera.look_at)},
                 {"up", vec_json(view.camera.up)},
                 {"width", view.camera.width},
                 {"height", view.camera.height},
                 {"vfov", view.camera.vfov}};
  j["yaw_deg"] = view.yaw_deg;
  j["pitch_deg"] = view.pitch_deg;
  j["distance"] = view.distance;
  j["state_id"] = view.state_id;
  j["state"] = view.state;
  return j.dump(2) + "\n";
}

ViewRecord view_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ViewRecord v;
    const json& c = j.at("camera");
    v.camera.position = json_vec(c.at("position"));
    v.camera.look_at = json_vec(c.at("look_at"));
    v.camera.up = json_vec(c.at("up"));
    v.camera.width = c.at("width").get<int>();
    v.camera.height = c.at("height").get<int>();
    v.camera.vfov = c.at("vfov").get<double>();
    v.camera.validate();
    v.yaw_deg = j.at("yaw_deg").get<double>();
    v.pitch_deg = j.at("pitch_deg").get<double>();
    v.distance = j.at("distance").get<double>();
    v.state_id = j.at("state_id").get<std::size_t>();
    v.state = j.at("state").get<artobj::JointState>();
    return v;
  } catch (const json::exception& e) {
    throw Error(std::string("view record: ") + e.what());
  }
}

}  // namespace aograsp::render
