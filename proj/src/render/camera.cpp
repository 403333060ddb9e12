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

#include "aograsp/render/camera.hpp"

#include <cmath>
#include <numbers>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"

namespace aograsp::render {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

void Camera::validate() const {
  if (!position.allFinite() || !look_at.allFinite() || !up.allFinite()) throw Error("camera: non-finite parameter");
  if ((position - look_at).norm() == 0.0) throw Error("camera: position equals look_at");
  if (!(vfov > 0.0 && vfov < std::numbers::pi)) throw Error("camera: vertical FOV outside (0, pi)");
  if (width <= 0 || height <= 0) throw Error("camera: non-positive resolution");
  if (forward().cross(up).norm() < 1e-9) throw Error("camera: up hint parallel to view direction");
}

Vector3 Camera::forward() const { return (look_at - position).normalized(); }

Vector3 Camera::right() const { return forward().cross(up).normalized(); }

Vector3 Camera::true_up() const { return right().cross(forward()); }

Vector3 Camera::ray_direction(double x, double y) const {
  const double ty = std::tan(0.5 * vfov);
  const double tx = ty * static_cast<double>(width) / static_cast<double>(height);
  const double sx = (2.0 * x / width - 1.0) * tx;
  const double sy = (1.0 - 2.0 * y / height) * ty;
  return (forward() + sx * right() + sy * true_up()).normalized();
}

std::optional<Eigen::Vector2d> Camera::project(const Point3& p) const {
  const Vector3 d = p - position;
  const double z = d.dot(forward());
  if (z <= 0.0) return std::nullopt;
  const double ty = std::tan(0.5 * vfov);
  const double tx = ty * static_cast<double>(width) / static_cast<double>(height);
  const double sx = d.dot(right()) / z;
  const double sy = d.dot(true_up()) / z;
  return Eigen::Vector2d((sx / tx + 1.0) * 0.5 * width, (1.0 - sy / ty) * 0.5 * height);
}

std::vector<ViewpointSample> sample_viewpoints(const ViewpointRange& range, const Point3& target, std::size_t n,
                                               std::uint64_t seed) {
  if (n == 0) throw Error("sample_viewpoints: n must be at least 1");
  if (range.yaw_span_deg < 0.0 || range.pitch_span_deg < 0.0) throw Error("viewpoint range: negative span");
  if (!(range.distance_min > 0.0) || range.distance_max < range.distance_min) {
    throw Error("viewpoint range: invalid distance range");
  }
  Rng rng(seed);
  std::vector<ViewpointSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ViewpointSample s;
    s.yaw_deg = rng.uniform(-0.5, 0.5) * range.yaw_span_deg;
    s.pitch_deg = rng.uniform(-0.5, 0.5) * range.pitch_span_deg;
    s.distance = range.distance_min + (range.distance_max - range.distance_min) * rng.uniform();
    const double yaw = s.yaw_deg * kDeg;
    const double pitch = s.pitch_deg * kDeg;
    const Vector3 dir(std::cos(pitch) * std::cos(yaw), std::cos(pitch) * std::sin(yaw), std::sin(pitch));
    s.camera.position = target + s.distance * dir;
    s.camera.look_at = target;
    s.camera.up = Vector3::UnitZ();
    s.camera.width = range.width;
    s.camera.height = range.height;
    s.camera.vfov = range.vfov_deg * kDeg;
    s.camera.validate();
    out.push_back(s);
  }
  return out;
}

}  // namespace aograsp::render
