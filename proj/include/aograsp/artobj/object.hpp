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

#ifndef AOGRASP_ARTOBJ_OBJECT_HPP_
#define AOGRASP_ARTOBJ_OBJECT_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::artobj {

using geom::Point3;
using geom::Vector3;

// `actionable` marks handle/knob/lip geometry attached to a movable part.
enum class SemanticTag { base, movable, actionable };

// `fixed` rigidly attaches a child (e.g. a handle) to its parent and carries
// no state.
enum class JointType { revolute, prismatic, fixed };

using Triangle = std::array<std::uint32_t, 3>;

struct Link {
  std::string name;
  SemanticTag tag = SemanticTag::base;
  std::vector<Point3> vertices;
  std::vector<Triangle> triangles;

  bool operator==(const Link&) const = default;
};

// Geometry is expressed in the object frame at q = 0 for every joint.
struct Joint {
  std::string name;
  JointType type = JointType::revolute;
  std::string parent;
  std::string child;
  Vector3 axis = Vector3::UnitZ();
  Point3 origin = Point3::Zero();
  double lower = 0.0;
  double upper = 0.0;
  // The limit value at which the part counts as closed. Opening moves q away
  // from it toward the other limit.
  double closed_value = 0.0;

  bool actuated() const { return type != JointType::fixed; }
  double range() const { return upper - lower; }
  double open_limit() const;
  // +1 when opening increases q, -1 when it decreases q.
  double open_sign() const;

  bool operator==(const Joint&) const = default;
};

// Joint name -> q for every actuated joint.
using JointState = std::map<std::string, double>;

std::string_view to_string(SemanticTag tag);
std::string_view to_string(JointType type);
std::optional<SemanticTag> parse_tag(std::string_view text);
std::optional<JointType> parse_joint_type(std::string_view text);

// Links joined into a tree by joints. Construction validates every structural
// invariant and throws aograsp::Error on violation.
class ArticulatedObject {
 public:
  ArticulatedObject(std::string name, std::vector<Link> links, std::vector<Joint> joints);

  const std::string& name() const { return name_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Joint>& joints() const { return joints_; }

  std::optional<std::size_t> link_index(std::string_view name) const;
  std::optional<std::size_t> joint_index(std::string_view name) const;
  std::size_t root_link() const { return root_; }

  // Joint whose child is this link, if any.
  std::optional<std::size_t> parent_joint(std::size_t link) const { return parent_joint_[link]; }

  // Links in parent-before-child order.
  const std::vector<std::size_t>& topological_order() const { return order_; }

  // Per-link flags: true for the joint's child and all its descendants.
  std::vector<bool> moved_by(std::size_t joint) const;

  std::vector<std::size_t> actuated_joints() const;

  bool operator==(const ArticulatedObject& other) const {
    return name_ == other.name_ && links_ == other.links_ && joints_ == other.joints_;
  }

 private:
  std::string name_;
  std::vector<Link> links_;
  std::vector<Joint> joints_;
  std::size_t root_ = 0;
  std::vector<std::optional<std::size_t>> parent_joint_;
  std::vector<std::size_t> order_;
};

}  // namespace aograsp::artobj

#endif  // AOGRASP_ARTOBJ_OBJECT_HPP_
