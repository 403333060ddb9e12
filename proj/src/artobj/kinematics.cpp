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

#include "aograsp/artobj/kinematics.hpp"

#include <cmath>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"

namespace aograsp::artobj {

Transform joint_motion(const Joint& joint, double q) {
  Transform t = Transform::Identity();
  switch (joint.type) {
    case JointType::revolute:
      t.translate(joint.origin);
      t.rotate(Eigen::AngleAxisd(q, joint.axis));
      t.translate(-joint.origin);
      break;
    case JointType::prismatic:
      t.translate(q * joint.axis);
      break;
    case JointType::fixed:
      break;
  }
  return t;
}

std::vector<Transform> forward_kinematics(const ArticulatedObject& obj, const JointState& state) {
  std::vector<Transform> world(obj.links().size(), Transform::Identity());
  for (std::size_t link : obj.topological_order()) {
    const auto pj = obj.parent_joint(link);
    if (!pj) continue;
    const Joint& joint = obj.joints()[*pj];
    double q = 0.0;
    if (joint.actuated()) {
      const auto it = state.find(joint.name);
      if (it == state.end()) throw Error("joint state is missing joint '" + joint.name + "'");
      q = it->second;
      const double tol = 1e-12 * std::max(1.0, joint.range());
      if (!(q >= joint.lower - tol && q <= joint.upper + tol)) {
        throw Error("joint '" + joint.name + "' state " + std::to_string(q) + " outside its limits");
      }
    }
    world[link] = world[*obj.link_index(joint.parent)] * joint_motion(joint, q);
  }
  return world;
}

std::vector<std::vector<Point3>> posed_vertices(const ArticulatedObject& obj,
                                                const std::vector<Transform>& transforms) {
  std::vector<std::vector<Point3>> out(obj.links().size());
  for (std::size_t l = 0; l < obj.links().size(); ++l) {
    out[l].reserve(obj.links()[l].vertices.size());
    for (const auto& v : obj.links()[l].vertices) out[l].push_back(transforms[l] * v);
  }
  return out;
}

Joint posed_joint(const ArticulatedObject& obj, const std::vector<Transform>& transforms, std::size_t joint) {
  Joint posed = obj.joints().at(joint);
  const Transform& parent = transforms[*obj.link_index(posed.parent)];
  posed.axis = (parent.linear() * posed.axis).normalized();
  posed.origin = parent * posed.origin;
  return posed;
}

JointState closed_state(const ArticulatedObject& obj) {
  JointState state;
  for (const auto& joint : obj.joints()) {
    if (joint.actuated()) state[joint.name] = joint.closed_value;
  }
  return state;
}

std::vector<JointState> sample_states(const ArticulatedObject& obj, std::size_t n_open, std::uint64_t seed) {
  std::vector<JointState> states;
  states.reserve(n_open + 1);
  states.push_back(closed_state(obj));
  Rng rng(seed);
  for (std::size_t s = 0; s < n_open; ++s) {
    JointState state;
    for (const auto& joint : obj.joints()) {
      if (!joint.actuated()) continue;
      if (joint.range() <= 0.0) {
        state[joint.name] = joint.lower;
        continue;
      }
      // Half-open interval (closed + delta, open_limit], measured toward the
      // open limit.
      const double delta = 0.02 * joint.range();
      const double near = joint.closed_value + joint.open_sign() * delta;
      const double far = joint.open_limit();
      state[joint.name] = far + rng.uniform() * (near - far);
    }
    states.push_back(std::move(state));
  }
  return states;
}

double distance_to_joint_axis(const Point3& point, const Joint& joint) {
  switch (joint.type) {
    case JointType::revolute: {
      const Vector3 v = point - joint.origin;
      return (v - v.dot(joint.axis) * joint.axis).norm();
    }
    case JointType::prismatic:
      return 1.0;
    case JointType::fixed:
      return 0.0;
  }
  return 0.0;
}

}  // namespace aograsp::artobj
