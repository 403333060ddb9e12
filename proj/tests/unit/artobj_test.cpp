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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/artobj/object_io.hpp"
#include "aograsp/artobj/procedural.hpp"
#include "aograsp/common/error.hpp"

namespace aograsp::artobj {
namespace {

constexpr double kPi = std::numbers::pi;

const char* kOneLink = R"({"name": "brick", "links": [{"name": "base", "tag": "base",
  "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]}], "joints": []})";

std::string two_link_doc(const std::string& joint_fields) {
  return std::string(R"({"name": "hinge", "links": [
    {"name": "base", "tag": "base", "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]},
    {"name": "door", "tag": "movable", "vertices": [[1,0,0],[2,0,0],[1,0,1]], "triangles": [[0,1,2]]}],
    "joints": [{"name": "j", "type": "revolute", "parent": "base", "child": "door", )") +
         joint_fields + "}]}";
}

const std::string kGoodJoint = R"("axis": [0,0,1], "origin": [0,0,0], "limits": [0, 1.5], "closed_value": 0)";

TEST(ParseObject, MinimalOneLinkDocument) {
  const auto obj = parse_object(kOneLink);
  EXPECT_EQ(obj.links().size(), 1u);
  EXPECT_EQ(obj.joints().size(), 0u);
  EXPECT_EQ(obj.name(), "brick");
}

TEST(ParseObject, LowerAboveUpperIsAnError) {
  const auto doc = two_link_doc(R"("axis": [0,0,1], "origin": [0,0,0], "limits": [1, 0], "closed_value": 0)");
  try {
    parse_object(doc);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("$.joints[0].limits"), std::string::npos) << e.what();
  }
}

TEST(ParseObject, SchemaErrorsCarryJsonPath) {
  const auto doc = std::string(R"({"name": "x", "links": [{"name": "base", "tag": "bogus",
    "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]}]})");
  try {
    parse_object(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("$.links[0].tag"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_object(R"({"links": []})"), Error);
  EXPECT_THROW(parse_object("not json"), Error);
}

TEST(ParseObject, NearlyUnitAxisIsNormalizedWithWarning) {
  std::vector<std::string> warnings;
  const auto obj = parse_object(
      two_link_doc(R"("axis": [0,0,1.0005], "origin": [0,0,0], "limits": [0, 1.5], "closed_value": 0)"), &warnings);
  EXPECT_NEAR(obj.joints()[0].axis.norm(), 1.0, 1e-15);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("axis"), std::string::npos);
  EXPECT_THROW(
      parse_object(two_link_doc(R"("axis": [0,0,1.5], "origin": [0,0,0], "limits": [0, 1.5], "closed_value": 0)")),
      Error);
}

TEST(ParseObject, KinematicCycleIsReported) {
  const std::string doc = R"({"name": "loop", "links": [
    {"name": "base", "tag": "base", "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]},
    {"name": "a", "tag": "movable", "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]},
    {"name": "b", "tag": "movable", "vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]}],
    "joints": [
    {"name": "ab", "type": "revolute", "parent": "a", "child": "b", "axis": [0,0,1], "origin": [0,0,0], "limits": [0,1], "closed_value": 0},
    {"name": "ba", "type": "revolute", "parent": "b", "child": "a", "axis": [0,0,1], "origin": [0,0,0], "limits": [0,1], "closed_value": 0}]})";
  try {
    parse_object(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("kinematic cycle at"), std::string::npos) << e.what();
  }
}

TEST(ParseObject, DegenerateTriangleRejected) {
  const std::string doc = R"({"name": "flat", "links": [{"name": "base", "tag": "base",
    "vertices": [[0,0,0],[1,0,0],[2,0,0]], "triangles": [[0,1,2]]}]})";
  EXPECT_THROW(parse_object(doc), Error);
}

TEST(ParseObject, RoundTripIsStructurallyEqual) {
  const auto obj = parse_object(two_link_doc(kGoodJoint));
  EXPECT_EQ(parse_object(serialize_object(obj)), obj);
  for (auto kind : {ProceduralKind::box_lid, ProceduralKind::cabinet_door, ProceduralKind::drawer,
                    ProceduralKind::bin_swing_lid}) {
    const auto proc = generate_procedural(kind, {}, 5);
    const std::string once = serialize_object(proc);
    const auto again = parse_object(once);
    EXPECT_EQ(again, proc) << to_string(kind);
    EXPECT_EQ(serialize_object(again), once);
  }
}

TEST(ForwardKinematics, ZeroStateIsIdentity) {
  const auto obj = generate_procedural(ProceduralKind::cabinet_door, {}, 1);
  JointState zero;
  for (const auto& j : obj.joints()) {
    if (j.actuated()) zero[j.name] = 0.0;
  }
  for (const auto& t : forward_kinematics(obj, zero)) EXPECT_TRUE(t.isApprox(Transform::Identity(), 0.0));
}

TEST(ForwardKinematics, HalfTurnAboutZ) {
  Joint j;
  j.type = JointType::revolute;
  j.axis = Vector3::UnitZ();
  j.origin = Point3::Zero();
  const Point3 moved = joint_motion(j, kPi) * Point3(1, 0, 0);
  EXPECT_NEAR(moved.x(), -1.0, 1e-15);
  EXPECT_NEAR(moved.y(), 0.0, 1e-15);
}

TEST(ForwardKinematics, PrismaticTranslatesChild) {
  Joint j;
  j.type = JointType::prismatic;
  j.axis = Vector3::UnitY();
  const Point3 moved = joint_motion(j, 0.1) * Point3(0.3, 0.2, 0.1);
  EXPECT_LT((moved - Point3(0.3, 0.3, 0.1)).norm(), 1e-15);
}

TEST(ForwardKinematics, MissingJointIsAnError) {
  const auto obj = generate_procedural(ProceduralKind::drawer, {}, 1);
  EXPECT_THROW(forward_kinematics(obj, {}), Error);
  EXPECT_THROW(forward_kinematics(obj, {{"drawer_slide", 0.5}}), Error);  // beyond the limit
}

TEST(ForwardKinematics, LinksMoveRigidly) {
  for (auto kind : {ProceduralKind::cabinet_door, ProceduralKind::drawer, ProceduralKind::box_lid}) {
    const auto obj = generate_procedural(kind, {}, 3);
    const auto rest = posed_vertices(obj, forward_kinematics(obj, closed_state(obj)));
    for (const auto& state : sample_states(obj, 5, 11)) {
      const auto posed = posed_vertices(obj, forward_kinematics(obj, state));
      for (std::size_t l = 0; l < posed.size(); ++l) {
        for (std::size_t a = 0; a < posed[l].size(); a += 3) {
          for (std::size_t b = a + 1; b < posed[l].size(); b += 5) {
            EXPECT_NEAR((posed[l][a] - posed[l][b]).norm(), (rest[l][a] - rest[l][b]).norm(), 1e-9);
          }
        }
      }
    }
  }
}

TEST(DistanceToJointAxis, Examples) {
  Joint rev;
  rev.type = JointType::revolute;
  rev.axis = Vector3::UnitZ();
  EXPECT_DOUBLE_EQ(distance_to_joint_axis({3, 4, 0}, rev), 5.0);
  EXPECT_DOUBLE_EQ(distance_to_joint_axis({0, 0, 7}, rev), 0.0);
  Joint pri;
  pri.type = JointType::prismatic;
  pri.axis = Vector3::UnitX();
  for (const Point3& p : {Point3(0, 0, 0), Point3(1, 2, 3), Point3(-9, 0.5, 4)}) {
    EXPECT_EQ(distance_to_joint_axis(p, pri), 1.0);
  }
}

TEST(DistanceToJointAxis, InvariantUnderRevoluteMotion) {
  const auto obj = generate_procedural(ProceduralKind::cabinet_door, {}, 8);
  const std::size_t j = obj.actuated_joints().front();
  const auto& joint = obj.joints()[j];
  const std::size_t door = *obj.link_index(joint.child);
  const auto rest = posed_vertices(obj, forward_kinematics(obj, closed_state(obj)));
  for (const auto& state : sample_states(obj, 4, 2)) {
    const auto tf = forward_kinematics(obj, state);
    const auto posed = posed_vertices(obj, tf);
    const Joint world_joint = posed_joint(obj, tf, j);
    for (std::size_t v = 0; v < posed[door].size(); ++v) {
      EXPECT_NEAR(distance_to_joint_axis(posed[door][v], world_joint), distance_to_joint_axis(rest[door][v], joint),
                  1e-9);
    }
  }
}

TEST(SampleStates, CountsAndDeterminism) {
  const auto obj = generate_procedural(ProceduralKind::cabinet_door, {}, 1);
  const auto none = sample_states(obj, 0, 3);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0], closed_state(obj));
  const auto ten = sample_states(obj, 9, 3);
  EXPECT_EQ(ten.size(), 10u);
  EXPECT_EQ(ten, sample_states(obj, 9, 3));
  EXPECT_NE(ten, sample_states(obj, 9, 4));
}

TEST(SampleStates, OpenStatesAreAwayFromClosed) {
  const auto obj = parse_object(
      two_link_doc(R"("axis": [0,0,1], "origin": [0,0,0], "limits": [-1.0, 0.5], "closed_value": 0.5)"));
  const auto& joint = obj.joints()[0];
  EXPECT_EQ(joint.open_sign(), -1.0);
  const auto states = sample_states(obj, 200, 17);
  for (std::size_t s = 1; s < states.size(); ++s) {
    const double q = states[s].at("j");
    EXPECT_GE(q, -1.0);
    EXPECT_LT(q, 0.5 - 0.02 * 1.5);
  }
}

TEST(SampleStates, ZeroRangeJointStaysFixed) {
  const auto obj = parse_object(
      two_link_doc(R"("axis": [0,0,1], "origin": [0,0,0], "limits": [0.2, 0.2], "closed_value": 0.2)"));
  for (const auto& s : sample_states(obj, 5, 1)) EXPECT_EQ(s.at("j"), 0.2);
}

TEST(Procedural, CabinetHingeRightIsVerticalEdgeOppositeHandle) {
  ProceduralParams p;
  p.hinge = HingeSide::right;
  const auto obj = generate_procedural(ProceduralKind::cabinet_door, p, 4);
  const auto& hinge = obj.joints()[*obj.joint_index("door_hinge")];
  EXPECT_EQ(hinge.type, JointType::revolute);
  EXPECT_NEAR(std::abs(hinge.axis.z()), 1.0, 1e-15);
  const auto& handle = obj.links()[*obj.link_index("handle")];
  double handle_y = 0.0;
  for (const auto& v : handle.vertices) handle_y += v.y();
  handle_y /= static_cast<double>(handle.vertices.size());
  // Right as seen from the front (+x) is +y; the handle sits on the other side.
  EXPECT_GT(hinge.origin.y(), 0.0);
  EXPECT_LT(handle_y, 0.0);
  // Opening swings the handle toward the viewer.
  const auto open = forward_kinematics(obj, {{"door_hinge", 0.5}});
  const std::size_t h = *obj.link_index("handle");
  EXPECT_GT((open[h] * handle.vertices[0]).x(), handle.vertices[0].x());
}

TEST(Procedural, DrawerSlidesAlongOutwardFaceNormal) {
  const auto obj = generate_procedural(ProceduralKind::drawer, {}, 4);
  const auto& slide = obj.joints()[*obj.joint_index("drawer_slide")];
  EXPECT_EQ(slide.type, JointType::prismatic);
  EXPECT_EQ(slide.axis, Vector3::UnitX());
  EXPECT_EQ(slide.upper, 0.3);
}

TEST(Procedural, EveryKindHasOneActionableHandlePerMovablePart) {
  for (auto kind : {ProceduralKind::box_lid, ProceduralKind::cabinet_door, ProceduralKind::drawer,
                    ProceduralKind::bin_swing_lid}) {
    for (auto side : {HingeSide::left, HingeSide::right, HingeSide::top, HingeSide::bottom}) {
      ProceduralParams p;
      p.hinge = side;
      const auto obj = generate_procedural(kind, p, 9);
      int actionable = 0;
      int movable = 0;
      for (const auto& l : obj.links()) {
        actionable += l.tag == SemanticTag::actionable;
        movable += l.tag == SemanticTag::movable;
      }
      EXPECT_EQ(actionable, 1);
      EXPECT_EQ(movable, 1);
      EXPECT_EQ(obj.actuated_joints().size(), 1u);
      const auto& j = obj.joints()[obj.actuated_joints().front()];
      EXPECT_EQ(j.lower, 0.0);
      EXPECT_EQ(j.upper, j.type == JointType::revolute ? kPi / 2 : 0.3);
    }
  }
}

TEST(Procedural, SameSeedSameVertices) {
  ProceduralParams p;
  p.size = 0.7;
  EXPECT_EQ(generate_procedural(ProceduralKind::bin_swing_lid, p, 12),
            generate_procedural(ProceduralKind::bin_swing_lid, p, 12));
  EXPECT_NE(generate_procedural(ProceduralKind::bin_swing_lid, p, 12),
            generate_procedural(ProceduralKind::bin_swing_lid, p, 13));
}

TEST(Procedural, OutOfRangeParamsRejected) {
  ProceduralParams p;
  p.size = 1.5;
  EXPECT_THROW(generate_procedural(ProceduralKind::drawer, p, 1), Error);
  p.size = 0.5;
  p.handle_radius = 0.001;
  EXPECT_THROW(generate_procedural(ProceduralKind::drawer, p, 1), Error);
}

TEST(Procedural, KnobAndLipVariantsBuild) {
  for (auto handle : {HandleKind::bar, HandleKind::knob, HandleKind::lip}) {
    ProceduralParams p;
    p.handle = handle;
    EXPECT_NO_THROW(generate_procedural(ProceduralKind::cabinet_door, p, 2));
    EXPECT_NO_THROW(generate_procedural(ProceduralKind::box_lid, p, 2));
  }
}

}  // namespace
}  // namespace aograsp::artobj
