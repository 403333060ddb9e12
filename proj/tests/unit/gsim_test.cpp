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
#include "aograsp/artobj/procedural.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/gsim/collision.hpp"
#include "aograsp/gsim/episode.hpp"
#include "aograsp/gsim/labeler.hpp"
#include "aograsp/render/renderer.hpp"
#include "aograsp/sampler/sampler.hpp"
#include "support/oracles.hpp"

namespace aograsp::gsim {
namespace {

using artobj::ArticulatedObject;
using artobj::JointState;
using sampler::Grasp;

constexpr double kDeg = std::numbers::pi / 180.0;

artobj::Link box_link(const std::string& name, artobj::SemanticTag tag, const Point3& lo, const Point3& hi) {
  artobj::Link link;
  link.name = name;
  link.tag = tag;
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<std::uint32_t, 3>> tris;
  oracle::box_mesh(lo, hi, verts, tris);
  link.vertices = verts;
  for (const auto& t : tris) link.triangles.push_back({t[0], t[1], t[2]});
  return link;
}

ArticulatedObject cube(double size) {
  const Point3 h = Point3::Constant(size / 2);
  return ArticulatedObject("cube", {box_link("body", artobj::SemanticTag::base, -h, h)}, {});
}

// Base far away plus a movable link given by its mesh, hinged about z
// through `hinge`.
ArticulatedObject with_movable(artobj::Link part, const Point3& hinge) {
  auto base = box_link("base", artobj::SemanticTag::base, {-2.0, -2.0, -2.0}, {-1.9, -1.9, -1.9});
  part.name = "part";
  part.tag = artobj::SemanticTag::movable;
  artobj::Joint j;
  j.name = "hinge";
  j.type = artobj::JointType::revolute;
  j.parent = "base";
  j.child = "part";
  j.axis = Vector3::UnitZ();
  j.origin = hinge;
  j.lower = 0.0;
  j.upper = std::numbers::pi / 2;
  return ArticulatedObject("slab", {base, part}, {j});
}

Grasp grasp_at(const Point3& t, const Vector3& closing, const Vector3& approach) {
  Grasp g;
  g.t = t;
  g.R.col(0) = closing.normalized();
  g.R.col(2) = approach.normalized();
  g.R.col(1) = g.R.col(2).cross(g.R.col(0));
  sampler::check_rotation(g.R);
  return g;
}

TEST(BoxTriangle, MatchesEdgeCrossingOracle) {
  Rng rng(1);
  int hits = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    OrientedBox box;
    box.center = {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    box.axes = oracle::random_rotation(rng.next_u64());
    box.half = {rng.uniform(0.01, 0.3), rng.uniform(0.01, 0.3), rng.uniform(0.01, 0.3)};
    Point3 v[3];
    for (auto& p : v) p = {rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
    const bool got = box_intersects_triangle(box, v[0], v[1], v[2]);
    const bool want = oracle::box_meets_triangle(box.center, box.axes, box.half, v[0], v[1], v[2]);
    ASSERT_EQ(got, want) << "trial " << trial;
    hits += got;
  }
  EXPECT_GT(hits, 2000);
  EXPECT_LT(hits, 18000);
}

TEST(BoxTriangle, ClippedOverlapLiesInBoxAndOnTriangle) {
  Rng rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    OrientedBox box;
    box.center = Point3::Zero();
    box.axes = oracle::random_rotation(rng.next_u64());
    box.half = {0.1, 0.2, 0.05};
    Point3 v[3];
    for (auto& p : v) p = {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const auto poly = clip_triangle_to_box(box, v[0], v[1], v[2]);
    if (!box_intersects_triangle(box, v[0], v[1], v[2])) {
      EXPECT_LT(polygon_area(poly), 1e-12);
      continue;
    }
    for (const auto& p : poly) {
      EXPECT_LT(oracle::point_triangle_distance(p, v[0], v[1], v[2]), 1e-9);
      EXPECT_TRUE((box.to_local(p).cwiseAbs().array() <= box.half.array() + 1e-9).all());
    }
  }
}

TEST(CollisionScene, WindingNumberOfClosedBox) {
  const auto obj = cube(0.2);
  const CollisionScene scene(obj, {});
  EXPECT_NEAR(scene.winding_number(0, {0.01, 0.02, -0.03}), 1.0, 1e-9);
  EXPECT_NEAR(scene.winding_number(0, {0.5, 0.0, 0.0}), 0.0, 1e-9);
}

TEST(SpawnCollision, FarAwayGripperIsFree) {
  const Grasp g = grasp_at({1.0, 0, 0}, Vector3::UnitY(), -Vector3::UnitX());
  EXPECT_FALSE(check_spawn_collision(cube(0.2), {}, g, GripperModel{}));
}

TEST(SpawnCollision, OriginInsideCubeCollides) {
  const Grasp g = grasp_at({0.0, 0, 0}, Vector3::UnitY(), -Vector3::UnitX());
  EXPECT_TRUE(check_spawn_collision(cube(0.2), {}, g, GripperModel{}));
  // Fully enclosed: no box touches a face, containment alone decides.
  EXPECT_TRUE(check_spawn_collision(cube(0.6), {}, g, GripperModel{}));
}

std::vector<std::array<Eigen::Vector3d, 3>> posed_soup(const CollisionScene& scene) {
  std::vector<std::array<Eigen::Vector3d, 3>> soup;
  for (const auto& t : scene.triangles()) soup.push_back({t.a, t.b, t.c});
  return soup;
}

// Dense oracle: a box collides when one of its surface samples lies inside
// the solid or a mesh vertex lies inside the box.
bool sampled_collision(const OrientedBox& box, const std::vector<std::array<Eigen::Vector3d, 3>>& soup,
                       const Point3& lo, const Point3& hi, std::uint64_t seed) {
  for (const auto& t : soup) {
    for (const auto& v : t) {
      if ((box.to_local(v).cwiseAbs().array() <= box.half.array()).all()) return true;
    }
  }
  // 10^4 jittered-grid samples spread over the faces in proportion to area.
  Rng rng(seed);
  const Vector3 e = box.half;
  const double total = 2.0 * (e.y() * e.z() + e.x() * e.z() + e.x() * e.y());
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    const double share = 2.0 * e[u] * e[v] / total * 5000.0;  // per face
    const int nu = std::max(1, static_cast<int>(std::round(std::sqrt(share * e[u] / e[v]))));
    const int nv = std::max(1, static_cast<int>(std::round(share / nu)));
    for (int side = -1; side <= 1; side += 2) {
      for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
          Vector3 local;
          local[axis] = side * e[axis];
          local[u] = -e[u] + 2.0 * e[u] * (i + rng.uniform()) / nu;
          local[v] = -e[v] + 2.0 * e[v] * (j + rng.uniform()) / nv;
          const Point3 p = box.center + box.axes * local;
          if ((p.array() < lo.array()).any() || (p.array() > hi.array()).any()) continue;
          if (oracle::crossing_winding(p, soup) > 0) return true;
        }
      }
    }
  }
  return false;
}

struct OracleTally {
  int cases = 0, agree = 0, positives = 0;
};

// Compares the collision test with the sampling oracle on random gripper
// poses. Poses are uniform over the object's bounds grown by 5 cm, or, with
// near_surface, within 5 cm of a random surface point (mostly grazing).
OracleTally compare_with_oracle(bool near_surface, int poses_per_scene, std::uint64_t seed) {
  std::vector<std::pair<ArticulatedObject, JointState>> scenes;
  auto cab = artobj::generate_procedural(artobj::ProceduralKind::cabinet_door, {}, 7);
  scenes.emplace_back(cab, artobj::closed_state(cab));
  auto drawer = artobj::generate_procedural(artobj::ProceduralKind::drawer, {}, 8);
  scenes.emplace_back(drawer, JointState{{"drawer_slide", 0.15}});

  const GripperModel gm;
  Rng rng(seed);
  OracleTally tally;
  for (const auto& [obj, state] : scenes) {
    const CollisionScene scene(obj, state);
    const auto soup = posed_soup(scene);
    Point3 lo = Point3::Constant(1e9), hi = Point3::Constant(-1e9);
    for (const auto& t : soup) {
      for (const auto& v : t) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
    }
    for (int trial = 0; trial < poses_per_scene; ++trial) {
      Point3 t;
      if (near_surface) {
        const auto& tri = soup[rng.index(soup.size())];
        double u = rng.uniform(), v = rng.uniform();
        if (u + v > 1) u = 1 - u, v = 1 - v;
        t = tri[0] + u * (tri[1] - tri[0]) + v * (tri[2] - tri[0]) + 0.05 * rng.uniform() * rng.unit_vector();
      } else {
        for (int a = 0; a < 3; ++a) t[a] = rng.uniform(lo[a] - 0.05, hi[a] + 0.05);
      }
      const Eigen::Matrix3d R = oracle::random_rotation(rng.next_u64());
      const OrientedBox boxes[3] = {gm.palm(t, R), gm.finger(t, R, 1.0, 0.0425), gm.finger(t, R, -1.0, 0.0425)};
      for (const auto& box : boxes) {
        ++tally.cases;
        const bool got = scene.collides(box);
        const bool want = sampled_collision(box, soup, lo, hi, rng.next_u64());
        tally.positives += got;
        if (got == want) {
          ++tally.agree;
          continue;
        }
        // Disagreements must sit within 1 mm of contact.
        EXPECT_FALSE(sampled_collision(box.inflated(-0.001), soup, lo, hi, 1)) << "case " << tally.cases;
        EXPECT_TRUE(sampled_collision(box.inflated(0.001), soup, lo, hi, 2)) << "case " << tally.cases;
      }
    }
  }
  return tally;
}

// With 10^4 samples the oracle spacing is ~0.9 mm on a finger box, so it
// cannot see contacts shallower than that; measured agreement on uniform
// poses is ~99.8%, every miss a true contact under 0.25 mm deep.
TEST(SpawnCollision, AgreesWithDenseSamplingOracle) {
  const auto tally = compare_with_oracle(false, 400, 3);
  EXPECT_GE(static_cast<double>(tally.agree) / tally.cases, 0.995) << tally.agree << "/" << tally.cases;
  EXPECT_GT(tally.positives, tally.cases / 10);
  EXPECT_LT(tally.positives, tally.cases * 9 / 10);
}

TEST(SpawnCollision, GrazingPosesDisagreeOnlyNearContact) {
  const auto tally = compare_with_oracle(true, 150, 4);
  EXPECT_GE(static_cast<double>(tally.agree) / tally.cases, 0.99) << tally.agree << "/" << tally.cases;
}

TEST(CloseGripper, SlabGivesAntipodalContacts) {
  const auto obj = with_movable(box_link("", {}, {-0.01, -0.1, 0.0}, {0.01, 0.1, 0.2}), {0.5, 0.0, 0.0});
  const JointState state = {{"hinge", 0.0}};
  const Grasp g = grasp_at({0.0, 0.0, -0.02}, Vector3::UnitX(), Vector3::UnitZ());
  ASSERT_FALSE(check_spawn_collision(obj, state, g, GripperModel{}));
  const auto report = close_gripper(obj, state, g, GripperModel{});
  ASSERT_TRUE(report.both());
  EXPECT_NEAR(report.fingers[0]->point.x(), 0.01, 1e-6);
  EXPECT_NEAR(report.fingers[1]->point.x(), -0.01, 1e-6);
  EXPECT_NEAR(report.fingers[0]->inner_offset, 0.01, 1e-6);
  EXPECT_LT((report.fingers[0]->normal - Vector3::UnitX()).norm(), 1e-12);
  EXPECT_LT((report.fingers[0]->normal + report.fingers[1]->normal).norm(), 1e-12);
}

TEST(CloseGripper, FreeSpaceHasNoContacts) {
  const Grasp g = grasp_at({1.0, 0, 0}, Vector3::UnitY(), -Vector3::UnitX());
  EXPECT_EQ(close_gripper(cube(0.2), {}, g, GripperModel{}).count(), 0u);
}

TEST(CloseGripper, ContactsLieOnTheMesh) {
  const auto obj = artobj::generate_procedural(artobj::ProceduralKind::drawer, {}, 4);
  const auto state = artobj::closed_state(obj);
  render::Camera cam;
  cam.position = {1.5, 0.3, 0.6};
  cam.look_at = render::bounding_box_center(obj, state);
  const auto cloud = render::render_partial_cloud(obj, state, cam).cloud;
  const auto grasps = sampler::compose_candidates(cloud, obj, state, 0, 150, {}, 5);
  const CollisionScene scene(obj, state);
  const auto posed = artobj::posed_vertices(obj, artobj::forward_kinematics(obj, state));
  int checked = 0;
  for (const auto& g : grasps) {
    if (check_spawn_collision(scene, g, GripperModel{})) continue;
    for (const auto& f : close_gripper(scene, g, GripperModel{}).fingers) {
      if (!f) continue;
      const auto l = static_cast<std::size_t>(f->link);
      const auto& tri = obj.links()[l].triangles[f->triangle];
      EXPECT_LT(oracle::point_triangle_distance(f->point, posed[l][tri[0]], posed[l][tri[1]], posed[l][tri[2]]), 1e-4);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

artobj::Joint posed_hinge(const Vector3& axis, const Point3& origin, double closed = 0.0) {
  artobj::Joint j;
  j.type = artobj::JointType::revolute;
  j.axis = axis;
  j.origin = origin;
  j.lower = 0.0;
  j.upper = 1.0;
  j.closed_value = closed;
  return j;
}

TEST(OptimalDirection, Prismatic) {
  artobj::Joint j;
  j.type = artobj::JointType::prismatic;
  j.axis = Vector3::UnitX();
  j.lower = 0;
  j.upper = 0.3;
  EXPECT_LT((optimal_direction(j, {3, 4, 5}) - Vector3::UnitX()).norm(), 1e-15);
  j.closed_value = 0.3;  // opening decreases q
  EXPECT_LT((optimal_direction(j, {3, 4, 5}) + Vector3::UnitX()).norm(), 1e-15);
}

TEST(OptimalDirection, RevoluteIsTangent) {
  EXPECT_LT((optimal_direction(posed_hinge(Vector3::UnitZ(), Point3::Zero()), {1, 0, 0}) - Vector3::UnitY()).norm(),
            1e-15);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto j = posed_hinge(rng.unit_vector(), {rng.uniform(), rng.uniform(), rng.uniform()});
    const Point3 c(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vector3 d = optimal_direction(j, c);
    Vector3 radius = c - j.origin;
    radius -= radius.dot(j.axis) * j.axis;
    EXPECT_NEAR(d.dot(radius), 0.0, 1e-9);
    EXPECT_NEAR(d.dot(j.axis), 0.0, 1e-9);
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  }
}

TEST(OptimalDirection, CentroidOnAxisIsAnError) {
  try {
    optimal_direction(posed_hinge(Vector3::UnitZ(), Point3::Zero()), {0, 0, 0.7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "zero moment arm");
  }
}

// Grasp squarely across the bar of a procedural handle: approach against
// the panel's outward normal, closing across the bar.
Grasp bar_grasp(const ArticulatedObject& obj, const Vector3& closing) {
  const auto& handle = obj.links()[*obj.link_index("handle")];
  Point3 lo = Point3::Constant(1e9), hi = Point3::Constant(-1e9);
  for (int i = 0; i < 8; ++i) {  // the bar is the handle's first box
    lo = lo.cwiseMin(handle.vertices[i]);
    hi = hi.cwiseMax(handle.vertices[i]);
  }
  const Point3 c = 0.5 * (lo + hi);
  return grasp_at({hi.x() + 0.005, c.y(), c.z()}, closing, -Vector3::UnitX());
}

TEST(RunEpisode, CabinetBarHandleSucceeds) {
  const auto obj = artobj::generate_procedural(artobj::ProceduralKind::cabinet_door, {}, 2);
  const auto r = run_episode(obj, artobj::closed_state(obj), bar_grasp(obj, Vector3::UnitY()), {}, {});
  ASSERT_TRUE(r.success()) << (r.failure_reason ? to_string(*r.failure_reason) : "");
  EXPECT_FALSE(r.failure_reason.has_value());
  EXPECT_NEAR(r.displacement, 30.0 * kDeg, 1e-12);
  EXPECT_EQ(r.steps_completed, 60);
}

TEST(RunEpisode, DrawerBarHandleSucceeds) {
  const auto obj = artobj::generate_procedural(artobj::ProceduralKind::drawer, {}, 2);
  const auto r = run_episode(obj, artobj::closed_state(obj), bar_grasp(obj, Vector3::UnitZ()), {}, {});
  ASSERT_TRUE(r.success()) << (r.failure_reason ? to_string(*r.failure_reason) : "");
  EXPECT_NEAR(r.displacement, 0.12, 1e-12);
}

TEST(RunEpisode, ShortTravelToLimitIsInsufficient) {
  const auto obj = artobj::generate_procedural(artobj::ProceduralKind::drawer, {}, 2);
  // 0.28 of 0.3 m already open: only 2 cm of travel remain.
  const JointState state = {{"drawer_slide", 0.28}};
  Grasp g = bar_grasp(obj, Vector3::UnitZ());
  g.t.x() += 0.28;
  const auto r = run_episode(obj, state, g, {}, {});
  ASSERT_TRUE(r.failure_reason.has_value());
  EXPECT_EQ(*r.failure_reason, FailureReason::insufficient_displacement);
  EXPECT_NEAR(r.displacement, 0.02, 1e-12);
}

TEST(RunEpisode, CabinetBodyIsWrongLink) {
  const auto obj = artobj::generate_procedural(artobj::ProceduralKind::cabinet_door, {}, 2);
  const auto& body = obj.links()[*obj.link_index("body")];
  Point3 lo = Point3::Constant(1e9), hi = Point3::Constant(-1e9);
  for (const auto& v : body.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  // Door swung fully open; grip the front edge of the wall opposite the hinge.
  const JointState open = {{"door_hinge", std::numbers::pi / 2}};
  const double wall = std::clamp(0.04 * 0.5, 0.01, 0.025);
  const Grasp g = grasp_at({hi.x() + 0.005, lo.y() + wall / 2, 0.5 * (lo.z() + hi.z())}, Vector3::UnitY(),
                           -Vector3::UnitX());
  const auto r = run_episode(obj, open, g, {}, {});
  ASSERT_TRUE(r.failure_reason.has_value());
  EXPECT_EQ(*r.failure_reason, FailureReason::wrong_link);
  ASSERT_TRUE(r.contacts.both());
  EXPECT_EQ(r.contacts.fingers[0]->link, static_cast<std::int32_t>(*obj.link_index("body")));
}

TEST(RunEpisode, ClosingAxisFarOffNormalsSlipsAtStepZero) {
  const double a = 80.0 * kDeg;
  const Vector3 n(std::cos(a), std::sin(a), 0.0);
  // Thin plate with normal n through the origin, as a posed rotated box.
  artobj::Link plate;
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<std::uint32_t, 3>> tris;
  oracle::box_mesh({-0.001, -0.2, 0.0}, {0.001, 0.2, 0.2}, verts, tris);
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(a, Vector3::UnitZ()).toRotationMatrix();
  for (auto& v : verts) v = rot * v;
  plate.vertices = verts;
  for (const auto& t : tris) plate.triangles.push_back({t[0], t[1], t[2]});
  const auto obj = with_movable(plate, {0.0, 0.3, 0.0});
  const Grasp g = grasp_at({0.0, 0.0, -0.02}, Vector3::UnitX(), Vector3::UnitZ());
  // Narrow fingers so the steep plate passes between them at spawn.
  GripperModel narrow;
  narrow.finger_width = 0.004;
  const auto r = run_episode(obj, {{"hinge", 0.0}}, g, narrow, {});
  ASSERT_TRUE(r.failure_reason.has_value()) << "unexpected success";
  EXPECT_EQ(*r.failure_reason, FailureReason::slip_during_motion);
  EXPECT_EQ(r.steps_completed, 0);
  EXPECT_EQ(r.displacement, 0.0);
  ASSERT_TRUE(r.contacts.both());
  EXPECT_NEAR(std::abs(r.contacts.fingers[0]->normal.dot(Vector3::UnitX())), std::cos(a), 1e-9);
}

class RandomEpisodes : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const artobj::ProceduralKind kinds[] = {artobj::ProceduralKind::cabinet_door, artobj::ProceduralKind::drawer,
                                            artobj::ProceduralKind::box_lid, artobj::ProceduralKind::bin_swing_lid};
    std::uint64_t seed = 30;
    for (auto kind : kinds) {
      Case c{artobj::generate_procedural(kind, {}, seed), {}, {}};
      c.state = artobj::sample_states(c.obj, 1, seed)[1];
      const auto views = render::sample_viewpoints({}, render::bounding_box_center(c.obj, c.state), 1, seed);
      const auto cloud = render::render_partial_cloud(c.obj, c.state, views[0].camera).cloud;
      c.grasps = sampler::compose_candidates(cloud, c.obj, c.state, 0, 120, {}, seed);
      cases_->push_back(std::move(c));
      ++seed;
    }
  }

  struct Case {
    ArticulatedObject obj;
    JointState state;
    std::vector<Grasp> grasps;
  };
  static inline std::vector<Case>* cases_ = new std::vector<Case>();
};

TEST_F(RandomEpisodes, DeterministicAcrossThreadCounts) {
  for (const auto& c : *cases_) {
    const auto a = apply_labels(c.grasps, run_episodes(c.obj, c.state, c.grasps, {}, {}, 1));
    const auto b = apply_labels(c.grasps, run_episodes(c.obj, c.state, c.grasps, {}, {}, 4));
    EXPECT_EQ(sampler::grasps_to_jsonl(a), sampler::grasps_to_jsonl(b));
  }
}

TEST_F(RandomEpisodes, RaisingThresholdNeverCreatesSuccess) {
  for (const auto& c : *cases_) {
    EpisodeConfig low, high;
    high.revolute_success = 25 * kDeg;
    high.prismatic_success = 0.1;
    const auto a = run_episodes(c.obj, c.state, c.grasps, {}, low);
    const auto b = run_episodes(c.obj, c.state, c.grasps, {}, high);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].success()) EXPECT_FALSE(b[i].success());
    }
  }
}

TEST_F(RandomEpisodes, SuccessesNeverRestOnBaseLinksAndMeetThreshold) {
  std::size_t successes = 0, total = 0;
  for (const auto& c : *cases_) {
    const auto results = run_episodes(c.obj, c.state, c.grasps, {}, {});
    for (const auto& r : results) {
      ++total;
      if (!r.success()) continue;
      ++successes;
      EXPECT_FALSE(r.failure_reason.has_value());
      for (const auto& f : r.contacts.fingers) {
        ASSERT_TRUE(f.has_value());
        EXPECT_NE(c.obj.links()[static_cast<std::size_t>(f->link)].tag, artobj::SemanticTag::base);
      }
      const auto& joint = c.obj.joints()[*r.joint];
      EXPECT_GE(r.displacement, (joint.type == artobj::JointType::revolute ? 15 * kDeg : 0.05) - 1e-12);
    }
  }
  EXPECT_GT(successes, 0u) << "no successes among " << total;
}

TEST_F(RandomEpisodes, AttachedFrameKeepsFingerContactDistances) {
  for (const auto& c : *cases_) {
    for (const auto& g : c.grasps) {
      const auto r = run_episode(c.obj, c.state, g, {}, {});
      if (r.steps_completed == 0) continue;
      const auto& joint = c.obj.joints()[*r.joint];
      const auto link = static_cast<std::size_t>(r.contacts.fingers[0]->link);
      const auto t0 = artobj::forward_kinematics(c.obj, c.state);
      JointState moved = c.state;
      moved[joint.name] += joint.open_sign() * r.displacement;
      const artobj::Transform delta = artobj::forward_kinematics(c.obj, moved)[link] * t0[link].inverse();
      for (const auto& f : r.contacts.fingers) {
        const double before = (f->point - g.t).norm();
        const double after = (delta * f->point - delta * g.t).norm();
        EXPECT_NEAR(before, after, 1e-9);
      }
      break;
    }
  }
}

TEST(Labeler, SummaryCsvListsEveryOutcome) {
  std::vector<Grasp> labeled(3);
  labeled[0].label = sampler::GraspLabel::success;
  labeled[1].label = sampler::GraspLabel::failure;
  labeled[1].failure_reason = "wrong_link";
  labeled[2].label = sampler::GraspLabel::failure;
  labeled[2].failure_reason = "wrong_link";
  EXPECT_EQ(summary_csv(outcome_counts(labeled)),
            "outcome,count\nsuccess,1\nspawn_collision,0\nno_contact_on_close,0\nwrong_link,2\n"
            "slip_during_motion,0\ninsufficient_displacement,0\n");
}

TEST(Labeler, FailureReasonNamesRoundTrip) {
  for (auto r : {FailureReason::spawn_collision, FailureReason::no_contact_on_close, FailureReason::wrong_link,
                 FailureReason::slip_during_motion, FailureReason::insufficient_displacement}) {
    EXPECT_EQ(parse_failure_reason(to_string(r)), r);
  }
  EXPECT_FALSE(parse_failure_reason("bogus").has_value());
}

}  // namespace
}  // namespace aograsp::gsim
