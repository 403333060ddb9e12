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

#ifndef AOGRASP_ARTOBJ_KINEMATICS_HPP_
#define AOGRASP_ARTOBJ_KINEMATICS_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Geometry>

#include "aograsp/artobj/object.hpp"

namespace aograsp::artobj {

using Transform = Eigen::Isometry3d;

// Motion a single joint applies to its child at state q.
Transform joint_motion(const Joint& joint, double q);

// World transform of every link, indexed like obj.links(). Throws if an
// actuated joint is missing from `state` or outside its limits.
std::vector<Transform> forward_kinematics(const ArticulatedObject& obj, const JointState& state);

// Link vertices moved to their posed world positions.
std::vector<std::vector<Point3>> posed_vertices(const ArticulatedObject& obj,
                                                const std::vector<Transform>& transforms);

// The joint with axis and origin expressed in the world frame for a posed
// object (the joint frame moves with its parent link).
Joint posed_joint(const ArticulatedObject& obj, const std::vector<Transform>& transforms,
                  std::size_t joint);

// Every actuated joint at its closed value.
JointState closed_state(const ArticulatedObject& obj);

// The closed state followed by n_open random open states. Each open q is
// drawn uniformly from the part of the range at least 2% of the range away
// from the closed value. Zero-range joints stay at their single value.
std::vector<JointState> sample_states(const ArticulatedObject& obj, std::size_t n_open,
                                      std::uint64_t seed);

// Revolute: distance from the point to the joint's axis line. Prismatic:
// 1.0 for every point, since all points of a sliding part move equally.
double distance_to_joint_axis(const Point3& point, const Joint& joint);

}  // namespace aograsp::artobj

#endif  // AOGRASP_ARTOBJ_KINEMATICS_HPP_
