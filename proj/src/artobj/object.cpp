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

#include "aograsp/artobj/object.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aograsp/common/error.hpp"

namespace aograsp::artobj {

double Joint::open_limit() const {
  return std::abs(upper - closed_value) >= std::abs(closed_value - lower) ? upper : lower;
}

double Joint::open_sign() const { return open_limit() >= closed_value ? 1.0 : -1.0; }

std::string_view to_string(SemanticTag tag) {
  switch (tag) {
    case SemanticTag::base: return "base";
    case SemanticTag::movable: return "movable";
    case SemanticTag::actionable: return "actionable";
  }
  return "base";
}

std::string_view to_string(JointType type) {
  switch (type) {
    case JointType::revolute: return "revolute";
    case JointType::prismatic: return "prismatic";
    case JointType::fixed: return "fixed";
  }
  return "fixed";
}

std::optional<SemanticTag> parse_tag(std::string_view text) {
  if (text == "base") return SemanticTag::base;
  if (text == "movable") return SemanticTag::movable;
  if (text == "actionable") return SemanticTag::actionable;
  return std::nullopt;
}

std::optional<JointType> parse_joint_type(std::string_view text) {
  if (text == "revolute") return JointType::revolute;
  if (text == "prismatic") return JointType::prismatic;
  if (text == "fixed") return JointType::fixed;
  return std::nullopt;
}

ArticulatedObject::ArticulatedObject(std::string name, std::vector<Link> links, std::vector<Joint> joints)
    : name_(std::move(name)), links_(std::move(links)), joints_(std::move(joints)) {
  if (links_.empty()) throw Error("object '" + name_ + "' has no links");

  std::set<std::string, std::less<>> link_names;
  for (const auto& link : links_) {
    if (!link_names.insert(link.name).second) throw Error("duplicate link name '" + link.name + "'");
    if (link.triangles.empty()) throw Error("link '" + link.name + "' has an empty mesh");
    for (std::size_t t = 0; t < link.triangles.size(); ++t) {
      const auto& tri = link.triangles[t];
      for (auto v : tri) {
        if (v >= link.vertices.size()) {
          throw Error("link '" + link.name + "' triangle " + std::to_string(t) + " references missing vertex");
        }
      }
      const Vector3 e1 = link.vertices[tri[1]] - link.vertices[tri[0]];
      const Vector3 e2 = link.vertices[tri[2]] - link.vertices[tri[0]];
      if (0.5 * e1.cross(e2).norm() <= 1e-12) {
        throw Error("link '" + link.name + "' triangle " + std::to_string(t) + " is degenerate");
      }
    }
    for (const auto& v : link.vertices) {
      if (!v.allFinite()) throw Error("link '" + link.name + "' has a non-finite vertex");
    }
  }

  parent_joint_.assign(links_.size(), std::nullopt);
  std::set<std::string, std::less<>> joint_names;
  for (std::size_t j = 0; j < joints_.size(); ++j) {
    const Joint& joint = joints_[j];
    if (!joint_names.insert(joint.name).second) throw Error("duplicate joint name '" + joint.name + "'");
    const auto parent = link_index(joint.parent);
    const auto child = link_index(joint.child);
    if (!parent) throw Error("joint '" + joint.name + "' references unknown parent '" + joint.parent + "'");
    if (!child) throw Error("joint '" + joint.name + "' references unknown child '" + joint.child + "'");
    if (*parent == *child) throw Error("kinematic cycle at " + joint.name);
    if (parent_joint_[*child]) throw Error("link '" + joint.child + "' has more than one parent joint");
    parent_joint_[*child] = j;
    if (std::abs(joint.axis.norm() - 1.0) > 1e-9) throw Error("joint '" + joint.name + "' axis is not unit length");
    if (!joint.origin.allFinite()) throw Error("joint '" + joint.name + "' origin is not finite");
    if (!(joint.lower <= joint.upper)) throw Error("joint '" + joint.name + "' has lower limit above upper limit");
    if (joint.actuated() && !(joint.closed_value >= joint.lower && joint.closed_value <= joint.upper)) {
      throw Error("joint '" + joint.name + "' closed_value outside its limits");
    }
  }

  // Every link except the root has exactly one parent joint; cycles show up
  // as links whose parent chain never reaches a root.
  std::vector<std::size_t> roots;
  for (std::size_t l = 0; l < links_.size(); ++l) {
    if (!parent_joint_[l]) roots.push_back(l);
  }
  for (std::size_t l = 0; l < links_.size(); ++l) {
    std::size_t cur = l;
    std::size_t steps = 0;
    while (parent_joint_[cur]) {
      const std::size_t j = *parent_joint_[cur];
      if (++steps > links_.size()) throw Error("kinematic cycle at " + joints_[j].name);
      cur = *link_index(joints_[j].parent);
    }
  }
  if (roots.size() != 1) {
    throw Error("object '" + name_ + "' must have exactly one root link, found " + std::to_string(roots.size()));
  }
  root_ = roots.front();
  if (links_[root_].tag != SemanticTag::base) {
    throw Error("root link '" + links_[root_].name + "' must be tagged base");
  }

  std::vector<std::vector<std::size_t>> children(links_.size());
  for (const auto& joint : joints_) children[*link_index(joint.parent)].push_back(*link_index(joint.child));
  order_.push_back(root_);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    for (std::size_t c : children[order_[head]]) order_.push_back(c);
  }
}

std::optional<std::size_t> ArticulatedObject::link_index(std::string_view name) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ArticulatedObject::joint_index(std::string_view name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<bool> ArticulatedObject::moved_by(std::size_t joint) const {
  std::vector<bool> moved(links_.size(), false);
  moved[*link_index(joints_.at(joint).child)] = true;
  for (std::size_t l : order_) {
    if (const auto pj = parent_joint_[l]) {
      if (moved[*link_index(joints_[*pj].parent)]) moved[l] = true;
    }
  }
  return moved;
}

std::vector<std::size_t> ArticulatedObject::actuated_joints() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < joints_.size(); ++j) {
    if (joints_[j].actuated()) out.push_back(j);
  }
  return out;
}

}  // namespace aograsp::artobj
