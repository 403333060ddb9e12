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

#ifndef AOGRASP_SAMPLER_SAMPLER_HPP_
#define AOGRASP_SAMPLER_SAMPLER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/geom/point_cloud.hpp"
#include "aograsp/sampler/grasp.hpp"

namespace aograsp::sampler {

struct SamplingConfig {
  double omega = 1.0;  // curvature weight
  double tau = 0.1;    // temperature
  double semantic_fraction = 0.5;
  double cone_half_angle = 0.523598775598298873;  // 30 degrees
  double standoff_min = 0.0;
  double standoff_max = 0.02;
  double semantic_perturbation = 0.261799387799324;  // 15 degrees

  void validate() const;
};

// Per-point s = exp((d + c * omega) / tau), d the distance to the joint axis
// and c the curvature. When the largest exponent exceeds 30 every score is
// divided by exp(max exponent), which leaves the implied distribution intact.
std::vector<double> score_points(const geom::PointCloud& cloud, const artobj::Joint& joint,
                                 const SamplingConfig& cfg);

// ceil(semantic_fraction * n) draws with p proportional to s among the
// actionable points (when any exist), the rest over the whole cloud.
// All-zero weights fall back to uniform draws and append a warning.
std::vector<std::size_t> sample_grasp_points(std::span<const double> scores, const std::vector<bool>& actionable,
                                             std::size_t n, const SamplingConfig& cfg, std::uint64_t seed,
                                             std::vector<std::string>* warnings = nullptr);

// Approach drawn uniformly (by solid angle) within the cone about -normal,
// wrist roll uniform in [0, 2pi).
Eigen::Matrix3d sample_orientation(const geom::Vector3& normal, const SamplingConfig& cfg, std::uint64_t seed);

// Approach -normal with the closing axis along the minor in-plane principal
// axis of `part_points`, then rotated by an angle ~ U[0, max_angle] about a
// uniformly random axis.
Eigen::Matrix3d semantic_orientation(const geom::Vector3& normal, std::span<const geom::Point3> part_points,
                                     double max_angle, std::uint64_t seed);

// Candidate grasps on a world-frame cloud rendered at `state`. Requires
// normals, curvature and link ids; `joint` indexes obj.joints() and selects
// the axis used for scoring.
std::vector<Grasp> compose_candidates(const geom::PointCloud& cloud, const artobj::ArticulatedObject& obj,
                                      const artobj::JointState& state, std::size_t joint, std::size_t n,
                                      const SamplingConfig& cfg, std::uint64_t seed,
                                      std::vector<std::string>* warnings = nullptr);

}  // namespace aograsp::sampler

#endif  // AOGRASP_SAMPLER_SAMPLER_HPP_
