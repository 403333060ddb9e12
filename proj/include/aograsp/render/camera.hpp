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

#ifndef AOGRASP_RENDER_CAMERA_HPP_
#define AOGRASP_RENDER_CAMERA_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::render {

using geom::Point3;
using geom::Vector3;

// Pinhole camera. Pixel (i, j) has its center at continuous image
// coordinates (i + 0.5, j + 0.5); j grows downward.
struct Camera {
  Point3 position = Point3(1.5, 0.0, 0.5);
  Point3 look_at = Point3(0.0, 0.0, 0.5);
  Vector3 up = Vector3::UnitZ();
  int width = 160;
  int height = 120;
  double vfov = 0.872664625997164788;  // 50 degrees

  void validate() const;

  Vector3 forward() const;
  Vector3 right() const;
  Vector3 true_up() const;

  // Unit direction of the ray through continuous image coordinates (x, y).
  Vector3 ray_direction(double x, double y) const;

  // Continuous image coordinates of a world point in front of the camera.
  std::optional<Eigen::Vector2d> project(const Point3& p) const;

  bool operator==(const Camera&) const = default;
};

// Camera placement relative to the object's front (+x). Yaw and pitch are
// drawn uniformly from symmetric spans around zero; distance uniformly from
// [distance_min, distance_max].
struct ViewpointRange {
  double yaw_span_deg = 120.0;
  double pitch_span_deg = 10.0;
  double distance_min = 1.0;
  double distance_max = 2.0;
  int width = 160;
  int height = 120;
  double vfov_deg = 50.0;
};

// Yaw and pitch (degrees) and distance a camera was sampled with.
struct ViewpointSample {
  Camera camera;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double distance = 0.0;
};

std::vector<ViewpointSample> sample_viewpoints(const ViewpointRange& range, const Point3& target, std::size_t n,
                                               std::uint64_t seed);

}  // namespace aograsp::render

#endif  // AOGRASP_RENDER_CAMERA_HPP_
