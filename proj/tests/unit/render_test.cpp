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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/artobj/procedural.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/render/camera.hpp"
#include "aograsp/render/correspondences.hpp"
#include "aograsp/render/raycast.hpp"
#include "aograsp/render/renderer.hpp"
#include "support/oracles.hpp"

namespace aograsp::render {
namespace {

artobj::ArticulatedObject unit_cube() {
  artobj::Link link;
  link.name = "cube";
  link.tag = artobj::SemanticTag::base;
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<std::uint32_t, 3>> tris;
  oracle::box_mesh(Eigen::Vector3d::Constant(-0.5), Eigen::Vector3d::Constant(0.5), verts, tris);
  link.vertices = verts;
  for (const auto& t : tris) link.triangles.push_back({t[0], t[1], t[2]});
  return artobj::ArticulatedObject("cube", {link}, {});
}

Camera camera_at(const Point3& pos, const Point3& target = Point3::Zero()) {
  Camera cam;
  cam.position = pos;
  cam.look_at = target;
  cam.up = Vector3::UnitZ();
  return cam;
}

TEST(RenderPartialCloud, CubeFromPlusXSeesOneFace) {
  const auto obj = unit_cube();
  const auto r = render_partial_cloud(obj, {}, camera_at({3, 0, 0}));
  ASSERT_GT(r.cloud.size(), 100u);
  for (std::size_t i = 0; i < r.cloud.size(); ++i) {
    EXPECT_NEAR(r.cloud.points[i].x(), 0.5, 1e-9);
    EXPECT_GT(r.cloud.normals[i].x(), 0.999);
  }
}

TEST(RenderPartialCloud, DefaultMaxPointsIs4096) { EXPECT_EQ(RenderOptions{}.max_points, 4096u); }

TEST(RenderPartialCloud, DownsamplesToMaxPoints) {
  const auto obj = unit_cube();
  RenderOptions opt;
  opt.max_points = 300;
  const auto r = render_partial_cloud(obj, {}, camera_at({2, 1, 1}), opt);
  EXPECT_GT(r.hit_count, 300u);
  EXPECT_EQ(r.cloud.size(), 300u);
  EXPECT_EQ(r.pixel.size(), 300u);
  r.cloud.validate();
}

TEST(RenderPartialCloud, CameraMissingObjectIsNotVisible) {
  const auto obj = unit_cube();
  try {
    render_partial_cloud(obj, {}, camera_at({3, 0, 0}, {6, 0, 0}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "object not visible");
  }
}

struct ViewCase {
  artobj::ArticulatedObject obj;
  artobj::JointState state;
  Camera cam;
};

std::vector<ViewCase> random_views() {
  std::vector<ViewCase> out;
  const artobj::ProceduralKind kinds[] = {artobj::ProceduralKind::cabinet_door, artobj::ProceduralKind::drawer,
                                          artobj::ProceduralKind::box_lid, artobj::ProceduralKind::bin_swing_lid};
  std::uint64_t seed = 11;
  for (auto kind : kinds) {
    auto obj = artobj::generate_procedural(kind, {}, seed);
    const auto states = artobj::sample_states(obj, 1, seed);
    for (const auto& st : states) {
      const auto views = sample_viewpoints({}, bounding_box_center(obj, st), 1, seed++);
      out.push_back({obj, st, views[0].camera});
    }
  }
  return out;
}

TEST(RenderPartialCloud, PointsLieOnTheirRecordedTriangle) {
  for (const auto& v : random_views()) {
    const auto r = render_partial_cloud(v.obj, v.state, v.cam);
    const auto posed = artobj::posed_vertices(v.obj, artobj::forward_kinematics(v.obj, v.state));
    for (std::size_t i = 0; i < r.cloud.size(); ++i) {
      const auto link = static_cast<std::size_t>(r.cloud.link_id[i]);
      const auto& tri = v.obj.links()[link].triangles[r.cloud.surface[i].triangle];
      const double d = oracle::point_triangle_distance(r.cloud.points[i], posed[link][tri[0]], posed[link][tri[1]],
                                                       posed[link][tri[2]]);
      ASSERT_LT(d, 1e-6) << v.obj.name() << " point " << i;
      const auto& s = r.cloud.surface[i];
      const Point3 bary = (1 - s.u - s.v) * posed[link][tri[0]] + s.u * posed[link][tri[1]] + s.v * posed[link][tri[2]];
      ASSERT_LT((bary - r.cloud.points[i]).norm(), 1e-6);
    }
  }
}

TEST(RenderPartialCloud, ReprojectsWithinHalfPixel) {
  for (const auto& v : random_views()) {
    const auto r = render_partial_cloud(v.obj, v.state, v.cam);
    for (std::size_t i = 0; i < r.cloud.size(); ++i) {
      const auto uv = v.cam.project(r.cloud.points[i]);
      ASSERT_TRUE(uv.has_value());
      const double cx = r.pixel[i] % v.cam.width + 0.5;
      const double cy = r.pixel[i] / v.cam.width + 0.5;
      ASSERT_LE(std::abs(uv->x() - cx), 0.5);
      ASSERT_LE(std::abs(uv->y() - cy), 0.5);
    }
  }
}

TEST(RenderPartialCloud, DeterministicAcrossThreadCounts) {
  for (const auto& v : random_views()) {
    RenderOptions one, many;
    many.threads = 4;
    const auto a = render_partial_cloud(v.obj, v.state, v.cam, one);
    const auto b = render_partial_cloud(v.obj, v.state, v.cam, many);
    ASSERT_EQ(a.cloud.points, b.cloud.points);
    ASSERT_EQ(a.cloud.normals, b.cloud.normals);
    ASSERT_EQ(a.pixel, b.pixel);
  }
}

TEST(RenderPartialCloud, DepthNoiseIsSeededAndBounded) {
  const auto obj = unit_cube();
  RenderOptions opt;
  opt.depth_noise_sigma = 0.002;
  opt.noise_seed = 9;
  const auto a = render_partial_cloud(obj, {}, camera_at({3, 0, 0}), opt);
  const auto b = render_partial_cloud(obj, {}, camera_at({3, 0, 0}), opt);
  EXPECT_EQ(a.cloud.points, b.cloud.points);
  double max_dev = 0.0, sum_sq = 0.0;
  for (const auto& p : a.cloud.points) {
    max_dev = std::max(max_dev, std::abs(p.x() - 0.5));
    sum_sq += (p.x() - 0.5) * (p.x() - 0.5);
  }
  EXPECT_GT(max_dev, 0.0);
  EXPECT_LT(std::sqrt(sum_sq / a.cloud.size()), 0.004);
}

TEST(TriangleScene, MatchesBruteForceNearestHit) {
  const auto views = random_views();
  for (const auto& v : views) {
    const auto scene = TriangleScene::from_object(v.obj, v.state);
    for (int py = 0; py < v.cam.height; py += 7) {
      for (int px = 0; px < v.cam.width; px += 7) {
        const Vector3 dir = v.cam.ray_direction(px + 0.5, py + 0.5);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& t : scene.triangles()) {
          if (auto hit = oracle::ray_triangle(v.cam.position, dir, t.a, t.b, t.c)) best = std::min(best, *hit);
        }
        const auto got = scene.intersect(v.cam.position, dir);
        if (std::isinf(best)) {
          // A ray grazing an edge may be caught by one test and not the other.
          if (got) EXPECT_TRUE(std::isfinite(got->t));
          continue;
        }
        ASSERT_TRUE(got.has_value()) << px << "," << py;
        EXPECT_NEAR(got->t, best, 1e-9);
      }
    }
  }
}

TEST(SampleViewpoints, ZeroSpanFixedDistanceGivesIdenticalCameras) {
  ViewpointRange range;
  range.yaw_span_deg = 0;
  range.pitch_span_deg = 0;
  range.distance_min = range.distance_max = 1.5;
  const auto views = sample_viewpoints(range, {0, 0, 0.3}, 20, 4);
  for (const auto& v : views) EXPECT_EQ(v.camera, views[0].camera);
  EXPECT_NEAR((views[0].camera.position - Point3(1.5, 0, 0.3)).norm(), 0.0, 1e-12);
}

TEST(SampleViewpoints, YawSpanIsCovered) {
  const auto views = sample_viewpoints({}, Point3::Zero(), 10000, 1);
  double lo = 1e9, hi = -1e9;
  for (const auto& v : views) {
    lo = std::min(lo, v.yaw_deg);
    hi = std::max(hi, v.yaw_deg);
    EXPECT_LE(std::abs(v.pitch_deg), 5.0);
    EXPECT_GE(v.distance, 1.0);
    EXPECT_LE(v.distance, 2.0);
    EXPECT_NEAR((v.camera.position - v.camera.look_at).norm(), v.distance, 1e-9);
  }
  EXPECT_GE(lo, -60.0);
  EXPECT_LE(lo, -58.0);
  EXPECT_GE(hi, 58.0);
  EXPECT_LE(hi, 60.0);
}

TEST(SampleViewpoints, PaperDefaults) {
  ViewpointRange r;
  EXPECT_EQ(r.yaw_span_deg, 120.0);
  EXPECT_EQ(r.pitch_span_deg, 10.0);
  EXPECT_EQ(r.width, 160);
  EXPECT_EQ(r.height, 120);
}

TEST(SampleViewpoints, DeterministicPerSeed) {
  const auto a = sample_viewpoints({}, Point3::Zero(), 50, 77);
  const auto b = sample_viewpoints({}, Point3::Zero(), 50, 77);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].camera, b[i].camera);
}

TEST(Camera, ProjectInvertsRayDirection) {
  const auto cam = camera_at({1, 2, 3}, {0, 0.1, 0.2});
  for (double x : {0.5, 13.25, 80.0, 159.5}) {
    for (double y : {0.5, 60.0, 119.5}) {
      const auto uv = cam.project(cam.position + 2.5 * cam.ray_direction(x, y));
      ASSERT_TRUE(uv.has_value());
      EXPECT_NEAR(uv->x(), x, 1e-9);
      EXPECT_NEAR(uv->y(), y, 1e-9);
    }
  }
  EXPECT_FALSE(cam.project(cam.position - cam.forward()).has_value());
}

TEST(Camera, ValidateRejectsDegenerateSetups) {
  Camera c = camera_at({1, 0, 0});
  c.look_at = c.position;
  EXPECT_THROW(c.validate(), Error);
  c = camera_at({1, 0, 0});
  c.vfov = 3.2;
  EXPECT_THROW(c.validate(), Error);
}

TEST(ExtractCorrespondences, IdenticalViewsMatchThemselves) {
  const auto obj = unit_cube();
  const auto r = render_partial_cloud(obj, {}, camera_at({2, 1, 1}));
  const auto set = extract_correspondences(r.cloud, r.cloud);
  ASSERT_EQ(set.pairs.size(), r.cloud.size());
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    EXPECT_EQ(set.pairs[i].first, i);
    EXPECT_EQ(set.pairs[i].second, i);
  }
}

TEST(ExtractCorrespondences, DisjointFacesGiveEmptySet) {
  const auto obj = unit_cube();
  const auto a = render_partial_cloud(obj, {}, camera_at({3, 0, 0}));
  const auto b = render_partial_cloud(obj, {}, camera_at({-3, 0, 0}));
  EXPECT_TRUE(extract_correspondences(a.cloud, b.cloud).pairs.empty());
}

// Brute-force mutual nearest same-link matching.
std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_matches(const geom::PointCloud& a, const geom::PointCloud& b,
                                                                    double eps) {
  auto nearest = [eps](const geom::PointCloud& from, std::size_t i, const geom::PointCloud& to) {
    std::size_t best = SIZE_MAX;
    double bd = 0;
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (from.link_id[i] != to.link_id[j]) continue;
      const double d = oracle::d2(from.points[i], to.points[j]);
      if (best == SIZE_MAX || d < bd) best = j, bd = d;
    }
    return (best != SIZE_MAX && std::sqrt(bd) < eps) ? best : SIZE_MAX;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto j = nearest(a, i, b);
    if (j != SIZE_MAX && nearest(b, j, a) == i) out.emplace_back(i, j);
  }
  return out;
}

TEST(ExtractCorrespondences, RandomCubeViewsRespectBoundAndMatchOracle) {
  const auto obj = unit_cube();
  const auto views = sample_viewpoints({}, Point3::Zero(), 4, 3);
  RenderOptions opt;
  opt.max_points = 800;
  const auto a = render_partial_cloud(obj, {}, views[0].camera, opt);
  const auto b = render_partial_cloud(obj, {}, views[1].camera, opt);
  const double eps = 0.02;
  const auto set = extract_correspondences(a.cloud, b.cloud, eps);
  EXPECT_FALSE(set.pairs.empty());
  for (const auto& [i, j] : set.pairs) {
    EXPECT_LT((a.cloud.points[i] - b.cloud.points[j]).norm(), eps);
    EXPECT_EQ(a.cloud.link_id[i], b.cloud.link_id[j]);
  }
  EXPECT_EQ(set.pairs, brute_matches(a.cloud, b.cloud, eps));
}

TEST(ExtractCorrespondences, SwappingViewsTransposesPairs) {
  for (const auto& v : random_views()) {
    const auto views = sample_viewpoints({}, bounding_box_center(v.obj, v.state), 2, 5);
    const auto a = render_partial_cloud(v.obj, v.state, views[0].camera);
    const auto b = render_partial_cloud(v.obj, v.state, views[1].camera);
    const auto ab = extract_correspondences(a.cloud, b.cloud, 0.01);
    auto ba = extract_correspondences(b.cloud, a.cloud, 0.01);
    for (auto& p : ba.pairs) std::swap(p.first, p.second);
    std::sort(ba.pairs.begin(), ba.pairs.end());
    EXPECT_EQ(ab.pairs, ba.pairs);
  }
}

TEST(CorrespondenceIo, AocrRoundTrip) {
  CorrespondenceSet set;
  set.pairs = {{0, 5}, {3, 2}, {4000000000u, 7}};
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  write_aocr(ss, set);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "AOCR");
  EXPECT_EQ(bytes.size(), 4u + 4u + 3u * 8u);
  EXPECT_EQ(read_aocr(ss).pairs, set.pairs);
}

TEST(CorrespondenceIo, TruncatedFileIsAnError) {
  std::stringstream ss(std::string("AOCR\x02\x00\x00\x00\x01\x00\x00\x00", 12));
  EXPECT_THROW(read_aocr(ss), Error);
}

TEST(ViewRecord, JsonRoundTrip) {
  ViewRecord v;
  v.camera = camera_at({1.25, -0.5, 0.75}, {0, 0, 0.2});
  v.yaw_deg = -12.5;
  v.pitch_deg = 3.0;
  v.distance = 1.4;
  v.state_id = 3;
  v.state = {{"door_hinge", 0.7}};
  const auto back = view_from_json(view_to_json(v));
  EXPECT_EQ(back.camera, v.camera);
  EXPECT_EQ(back.state, v.state);
  EXPECT_EQ(back.state_id, 3u);
  EXPECT_EQ(back.yaw_deg, -12.5);
}

}  // namespace
}  // namespace aograsp::render
