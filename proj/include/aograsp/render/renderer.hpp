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

#ifndef AOGRASP_RENDER_RENDERER_HPP_
#define AOGRASP_RENDER_RENDERER_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/geom/point_cloud.hpp"
#include "aograsp/render/camera.hpp"

namespace aograsp::render {

struct RenderOptions {
  std::size_t max_points = 4096;
  std::size_t normal_neighbors = 20;
  double depth_noise_sigma = 0.0;  // meters along the ray; 0 disables
  std::uint64_t noise_seed = 0;
  std::size_t threads = 1;
};

struct RenderResult {
  geom::PointCloud cloud;            // world frame, with link and surface ids
  std::vector<std::uint32_t> pixel;  // source pixel (row-major) per point
  std::size_t hit_count = 0;         // hits before downsampling
  std::size_t degenerate_normals = 0;
};

// Casts one primary ray per pixel through the posed meshes. Hits are
// collected in pixel-major order, farthest-point downsampled to max_points
// when needed, and given normals and curvature with the camera as viewpoint.
// Throws "object not visible" when no ray hits.
RenderResult render_partial_cloud(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                                  const Camera& camera, const RenderOptions& options = {});

// Center of the posed object's axis-aligned bounding box.
Point3 bounding_box_center(const artobj::ArticulatedObject& obj, const artobj::JointState& state);

// JSON sidecar describing how a view was produced.
struct ViewRecord {
  Camera camera;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double distance = 0.0;
  std::size_t state_id = 0;
  artobj::JointState state;
};

std::string view_to_json(const ViewRecord& view);
ViewRecord view_from_json(const std::string& text);

}  // namespace aograsp::render

#endif  // AOGRASP_RENDER_RENDERER_HPP_
