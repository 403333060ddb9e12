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

#ifndef AOGRASP_GSIM_EPISODE_HPP_
#define AOGRASP_GSIM_EPISODE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/gsim/collision.hpp"
#include "aograsp/sampler/grasp.hpp"

namespace aograsp::gsim {

// Parallel-jaw gripper in the grasp frame: fingers close along x, approach
// is +z, and the fingers span z in [finger_z_min, finger_z_max] with the palm
// directly behind them.
struct GripperModel {
  double max_opening = 0.085;
  double finger_thickness = 0.01;  // along x
  double finger_width = 0.02;      // along y
  double finger_z_min = -0.01;
  double finger_z_max = 0.04;
  double palm_depth = 0.03;  // palm spans [finger_z_min - palm_depth, finger_z_min]
  double stroke_resolution = 0.001;
  double bisection_tolerance = 1e-7;
  double friction_half_angle = 0.349065850398865915;  // 20 degrees

  void validate() const;

  // World-frame boxes for a gripper at pose (t, R). `side` is +1 or -1 and
  // `inner_offset` the distance of the finger's inner face from the axis.
  OrientedBox palm(const Point3& t, const Eigen::Matrix3d& R) const;
  OrientedBox finger(const Point3& t, const Eigen::Matrix3d& R, double side, double inner_offset) const;
};

struct EpisodeConfig {
  int steps = 60;
  double revolute_step = 0.00872664625997164788;  // 0.5 degrees
  double prismatic_step = 0.002;
  double revolute_success = 0.261799387799324;  // 15 degrees
  double prismatic_success = 0.05;
  double contact_tolerance = 0.002;

  void validate() const;
};

enum class FailureReason {
  spawn_collision,
  no_contact_on_close,
  wrong_link,
  slip_during_motion,
  insufficient_displacement
};

std::string_view to_string(FailureReason reason);
std::optional<FailureReason> parse_failure_reason(std::string_view text);

struct FingerContact {
  std::int32_t link = -1;
  std::uint32_t triangle = 0;
  Point3 point = Point3::Zero();
  Vector3 normal = Vector3::Zero();  // unit, facing the finger
  double inner_offset = 0.0;         // finger inner face distance from the grasp axis
};

// Index 0 is the +x finger, index 1 the -x finger.
struct ContactReport {
  std::array<std::optional<FingerContact>, 2> fingers;

  bool both() const { return fingers[0].has_value() && fingers[1].has_value(); }
  std::size_t count() const { return fingers[0].has_value() + fingers[1].has_value(); }
};

struct EpisodeResult {
  sampler::GraspLabel label = sampler::GraspLabel::failure;
  std::optional<FailureReason> failure_reason;
  double displacement = 0.0;  // |q - q0| reached, radians or meters
  int steps_completed = 0;
  std::optional<std::size_t> joint;  // actuated joint, once identified
  ContactReport contacts;

  bool success() const { return label == sampler::GraspLabel::success; }
};

bool check_spawn_collision(const CollisionScene& scene, const sampler::Grasp& grasp, const GripperModel& gripper);
bool check_spawn_collision(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                           const sampler::Grasp& grasp, const GripperModel& gripper);

// Each finger advances from the fully open position toward the axis in
// stroke_resolution steps; the first colliding step is refined by bisection.
// The contact is the centroid of the finger/triangle overlap for the
// triangle with the largest overlap area.
ContactReport close_gripper(const CollisionScene& scene, const sampler::Grasp& grasp, const GripperModel& gripper);
ContactReport close_gripper(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                            const sampler::Grasp& grasp, const GripperModel& gripper);

// World-frame direction in which pulling the contact centroid opens the
// joint. `joint` must already be posed. Throws "zero moment arm" for a
// revolute joint whose axis passes through the centroid.
Vector3 optimal_direction(const artobj::Joint& joint, const Point3& centroid);

// First actuated joint on the path from `link` to the root, if any.
std::optional<std::size_t> actuating_joint(const artobj::ArticulatedObject& obj, std::size_t link);

EpisodeResult run_episode(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                          const sampler::Grasp& grasp, const GripperModel& gripper, const EpisodeConfig& cfg);

}  // namespace aograsp::gsim

#endif  // AOGRASP_GSIM_EPISODE_HPP_
