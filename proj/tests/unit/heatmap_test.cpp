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
#include <sstream>

#include <gtest/gtest.h>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/heatmap/heatmap.hpp"

namespace aograsp::heatmap {
namespace {

geom::PointCloud one_point(const Point3& p = Point3::Zero()) {
  geom::PointCloud c;
  c.points = {p};
  return c;
}

SparseLabels repeated(const Point3& p, int n, std::int8_t polarity = 1) {
  SparseLabels l;
  for (int i = 0; i < n; ++i) {
    l.points.push_back(p);
    l.polarity.push_back(polarity);
  }
  return l;
}

// Scalar evaluation of the densification rule for one query point.
double hand_heat(const Point3& q, const SparseLabels& labels, const HeatmapConfig& cfg) {
  std::vector<std::pair<double, std::size_t>> ds;
  double nearest_pos = 1e300;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const double d = (q - labels.points[j]).norm();
    ds.emplace_back(d, j);
    if (labels.polarity[j] > 0) nearest_pos = std::min(nearest_pos, d);
  }
  if (nearest_pos > cfg.r) return 0.0;
  std::sort(ds.begin(), ds.end());
  double sum = 0;
  for (std::size_t m = 0; m < std::min(cfg.k, ds.size()); ++m) {
    const auto [d, j] = ds[m];
    const double w = labels.polarity[j] > 0 ? 1 - cfg.lambda_pos / cfg.r * d : cfg.lambda_neg * (1 - d / cfg.r);
    sum += std::max(0.0, w);
  }
  return std::min(1.0, sum / cfg.k);
}

TEST(Densify, PaperDefaults) {
  HeatmapConfig cfg;
  EXPECT_EQ(cfg.k, 15u);
  EXPECT_EQ(cfg.r, 0.04);
  EXPECT_EQ(cfg.lambda_pos, 2.0);
  EXPECT_EQ(cfg.lambda_neg, 0.0);
}

TEST(Densify, SingleCoincidentPositive) {
  EXPECT_NEAR(densify(one_point(), repeated(Point3::Zero(), 1), {})[0], 1.0 / 15.0, 1e-15);
}

TEST(Densify, FifteenCoincidentPositivesSaturate) {
  EXPECT_EQ(densify(one_point(), repeated(Point3::Zero(), 15), {})[0], 1.0);
}

TEST(Densify, PositiveAtHalfRadiusHasZeroWeight) {
  EXPECT_EQ(densify(one_point(), repeated({0.02, 0, 0}, 1), {})[0], 0.0);
}

TEST(Densify, NearestPositiveBeyondRadiusGivesZero) {
  HeatmapConfig cfg;
  cfg.lambda_pos = 0.0;  // would otherwise contribute 1 each
  EXPECT_EQ(densify(one_point(), repeated({0.06, 0, 0}, 20), cfg)[0], 0.0);
}

TEST(Densify, ZeroLambdaPositivesInRangeSaturate) {
  HeatmapConfig cfg;
  cfg.lambda_pos = 0.0;
  SparseLabels l;
  for (int i = 0; i < 20; ++i) {
    l.points.emplace_back(0.001 * i, 0, 0);
    l.polarity.push_back(1);
  }
  EXPECT_EQ(densify(one_point(), l, cfg)[0], 1.0);
  EXPECT_EQ(densify_bruteforce(one_point(), l, cfg)[0], 1.0);
}

TEST(Densify, NegativesAreIgnoredWithZeroLambda) {
  SparseLabels l = repeated(Point3::Zero(), 1);
  for (int i = 0; i < 5; ++i) {
    l.points.emplace_back(0.001, 0, 0);
    l.polarity.push_back(-1);
  }
  EXPECT_NEAR(densify(one_point(), l, {})[0], 1.0 / 15.0, 1e-15);
}

TEST(Densify, NoLabelsIsAnError) {
  for (auto fn : {+[](const geom::PointCloud& c) { densify(c, {}, {}); },
                  +[](const geom::PointCloud& c) { densify_bruteforce(c, {}, {}); }}) {
    try {
      fn(one_point());
      FAIL();
    } catch (const Error& e) {
      EXPECT_STREQ(e.what(), "no labels");
    }
  }
}

struct Instance {
  geom::PointCloud cloud;
  SparseLabels labels;
  HeatmapConfig cfg;
};

Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  Rng rng(seed);
  Instance in;
  for (std::size_t i = 0; i < n; ++i) in.cloud.points.emplace_back(rng.uniform(0, 0.3), rng.uniform(0, 0.3), rng.uniform(0, 0.1));
  for (std::size_t j = 0; j < m; ++j) {
    in.labels.points.emplace_back(rng.uniform(0, 0.3), rng.uniform(0, 0.3), rng.uniform(0, 0.1));
    in.labels.polarity.push_back(rng.uniform() < 0.4 ? 1 : -1);
  }
  in.cfg.k = 1 + rng.index(20);
  in.cfg.r = rng.uniform(0.01, 0.08);
  in.cfg.lambda_pos = rng.uniform(0, 3);
  in.cfg.lambda_neg = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0, 1);
  return in;
}

TEST(Densify, MatchesBruteForceAndHandEvaluation) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto in = random_instance(seed, seed < 2 ? 5000 : 800, seed < 2 ? 500 : 5 + seed * 20);
    const auto fast = densify(in.cloud, in.labels, in.cfg, 3);
    const auto slow = densify_bruteforce(in.cloud, in.labels, in.cfg);
    ASSERT_EQ(fast.size(), in.cloud.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      ASSERT_NEAR(fast[i], slow[i], 1e-9) << "seed " << seed << " point " << i;
      ASSERT_GE(fast[i], 0.0);
      ASSERT_LE(fast[i], 1.0);
      if (i % 97 == 0) ASSERT_NEAR(fast[i], hand_heat(in.cloud.points[i], in.labels, in.cfg), 1e-12);
    }
  }
}

TEST(Densify, ZeroWhereNoPositiveWithinRadius) {
  const auto in = random_instance(99, 2000, 60);
  const auto heat = densify(in.cloud, in.labels, in.cfg);
  for (std::size_t i = 0; i < heat.size(); ++i) {
    double nearest = 1e300;
    for (std::size_t j = 0; j < in.labels.size(); ++j) {
      if (in.labels.polarity[j] > 0) nearest = std::min(nearest, (in.cloud.points[i] - in.labels.points[j]).norm());
    }
    if (nearest > in.cfg.r) EXPECT_EQ(heat[i], 0.0);
  }
}

TEST(Densify, FarLabelOutsideEveryNeighborhoodChangesNothing) {
  auto in = random_instance(5, 1500, 200);
  in.cfg.k = 5;
  const auto before = densify(in.cloud, in.labels, in.cfg);
  // A label 10 m away can neither be within r of any point nor displace a
  // k-nearest member (every point has >= k labels well within 10 m).
  in.labels.points.emplace_back(10, 10, 10);
  in.labels.polarity.push_back(1);
  EXPECT_EQ(densify(in.cloud, in.labels, in.cfg), before);
}

TEST(Densify, AddingPositiveWithoutEvictionNeverDecreases) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    HeatmapConfig cfg;
    cfg.k = 6;
    SparseLabels l;
    const std::size_t m = 1 + rng.index(5);  // fewer than k: nothing is evicted
    for (std::size_t j = 0; j < m; ++j) {
      l.points.emplace_back(rng.uniform(-0.03, 0.03), rng.uniform(-0.03, 0.03), 0);
      l.polarity.push_back(rng.uniform() < 0.5 ? 1 : -1);
    }
    geom::PointCloud cloud;
    for (int i = 0; i < 50; ++i) cloud.points.emplace_back(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05), 0);
    const auto before = densify(cloud, l, cfg);
    l.points.emplace_back(rng.uniform(-0.03, 0.03), rng.uniform(-0.03, 0.03), 0);
    l.polarity.push_back(1);
    const auto after = densify(cloud, l, cfg);
    for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_GE(after[i], before[i]);
  }
}

TEST(LabelsFromGrasps, UsesContactPointsAndSkipsUnlabeled) {
  geom::PointCloud cloud;
  cloud.points = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  std::vector<sampler::Grasp> g(3);
  g[0].contact_index = 2;
  g[0].label = sampler::GraspLabel::success;
  g[1].contact_index = 1;
  g[1].label = sampler::GraspLabel::failure;
  g[2].contact_index = 0;
  const auto l = labels_from_grasps(cloud, g);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l.points[0], Point3(2, 0, 0));
  EXPECT_EQ(l.polarity[0], 1);
  EXPECT_EQ(l.polarity[1], -1);
}

TEST(HeatmapIo, AohmRoundTrip) {
  const std::vector<double> heat = {0.0, 0.25, 1.0, 1.0 / 15.0};
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  write_aohm(ss, heat);
  EXPECT_EQ(ss.str().size(), 4u + 4u + 4u * 4u);
  const auto back = read_aohm(ss);
  ASSERT_EQ(back.size(), heat.size());
  for (std::size_t i = 0; i < heat.size(); ++i) EXPECT_EQ(back[i], static_cast<double>(static_cast<float>(heat[i])));
}

TEST(HeatmapIo, BadMagicIsAnError) {
  std::stringstream ss(std::string("AOPC\0\0\0\0", 8));
  EXPECT_THROW(read_aohm(ss), Error);
}

}  // namespace
}  // namespace aograsp::heatmap
