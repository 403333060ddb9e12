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

#include "aograsp/heatmap/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/geom/cloud_io.hpp"
#include "aograsp/geom/neighbors.hpp"

namespace aograsp::heatmap {

namespace {

double weight(const HeatmapConfig& cfg, std::int8_t polarity, double d) {
  return polarity > 0 ? 1.0 - (cfg.lambda_pos / cfg.r) * d : cfg.lambda_neg * (1.0 - d / cfg.r);
}

double finish(const HeatmapConfig& cfg, double sum) { return std::min(1.0, sum / static_cast<double>(cfg.k)); }

void check_inputs(const SparseLabels& labels, const HeatmapConfig& cfg) {
  cfg.validate();
  if (labels.points.empty()) throw Error("no labels");
  labels.validate();
}

}  // namespace

void SparseLabels::validate() const {
  if (points.size() != polarity.size()) throw Error("sparse labels: polarity length mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) throw Error("sparse labels: non-finite position");
    if (polarity[i] != 1 && polarity[i] != -1) throw Error("sparse labels: polarity must be +1 or -1");
  }
}

void HeatmapConfig::validate() const {
  if (k < 1) throw Error("heatmap config: k must be at least 1");
  if (!(r > 0.0)) throw Error("heatmap config: r must be positive");
  if (!(lambda_pos >= 0.0) || !(lambda_neg >= 0.0)) throw Error("heatmap config: lambdas must be >= 0");
}

SparseLabels labels_from_grasps(const geom::PointCloud& cloud, const std::vector<sampler::Grasp>& grasps) {
  SparseLabels out;
  for (const auto& g : grasps) {
    if (g.label == sampler::GraspLabel::unlabeled) continue;
    if (g.contact_index >= cloud.size()) throw Error("grasp contact index outside the cloud");
    out.points.push_back(cloud.points[g.contact_index]);
    out.polarity.push_back(g.label == sampler::GraspLabel::success ? 1 : -1);
  }
  return out;
}

std::vector<double> densify(const geom::PointCloud& cloud, const SparseLabels& labels, const HeatmapConfig& cfg,
                            std::size_t threads) {
  check_inputs(labels, cfg);
  std::vector<Point3> positives;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels.polarity[j] > 0) positives.push_back(labels.points[j]);
  }
  std::vector<double> heat(cloud.size(), 0.0);
  if (positives.empty()) return heat;
  const geom::NeighborIndex all(labels.points);
  const geom::NeighborIndex pos(positives);
  const std::size_t k = std::min(cfg.k, labels.size());
  parallel_for(cloud.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const Point3& p = cloud.points[i];
    const double dpos = std::sqrt(geom::squared_distance(p, positives[pos.nearest(p)]));
    if (dpos > cfg.r) return;
    const auto nb = all.knn(p, k);
    double sum = 0.0;
    for (std::size_t m = 0; m < nb.size(); ++m) {
      sum += std::max(0.0, weight(cfg, labels.polarity[nb.indices[m]], nb.distances[m]));
    }
    heat[i] = finish(cfg, sum);
  });
  return heat;
}

std::vector<double> densify_bruteforce(const geom::PointCloud& cloud, const SparseLabels& labels,
                                       const HeatmapConfig& cfg) {
  check_inputs(labels, cfg);
  std::vector<double> heat(cloud.size(), 0.0);
  std::vector<std::size_t> order(labels.size());
  std::vector<double> d(labels.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double nearest_pos = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < labels.size(); ++j) {
      d[j] = std::sqrt(geom::squared_distance(cloud.points[i], labels.points[j]));
      if (labels.polarity[j] > 0) nearest_pos = std::min(nearest_pos, d[j]);
    }
    if (!(nearest_pos <= cfg.r)) continue;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
    double sum = 0.0;
    for (std::size_t m = 0; m < std::min(cfg.k, labels.size()); ++m) {
      sum += std::max(0.0, weight(cfg, labels.polarity[order[m]], d[order[m]]));
    }
    heat[i] = finish(cfg, sum);
  }
  return heat;
}

void write_aohm(std::ostream& out, const std::vector<double>& heat) {
  io::write_magic(out, "AOHM");
  io::write_le(out, static_cast<std::uint32_t>(heat.size()));
  for (double h : heat) io::write_le(out, static_cast<float>(h));
}

void write_aohm(const std::filesystem::path& path, const std::vector<double>& heat) {
  std::ostringstream buffer(std::ios::binary);
  write_aohm(buffer, heat);
  io::write_file_atomic(path, buffer.str());
}

std::vector<double> read_aohm(std::istream& in) {
  io::expect_magic(in, "AOHM");
  const auto n = io::read_le<std::uint32_t>(in);
  std::vector<double> heat(n);
  for (auto& h : heat) {
    h = io::read_le<float>(in);
    if (!(h >= 0.0 && h <= 1.0)) throw Error("AOHM value outside [0, 1]");
  }
  return heat;
}

std::vector<double> read_aohm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_aohm(in);
}

void write_heat_ply(const std::filesystem::path& path, const geom::PointCloud& cloud, const std::vector<double>& heat) {
  if (heat.size() != cloud.size()) throw Error("heatmap length does not match the cloud");
  std::vector<geom::Rgb> colors;
  colors.reserve(heat.size());
  for (double h : heat) colors.push_back(geom::heat_color(h));
  geom::write_ply(path, cloud, colors);
}

}  // namespace aograsp::heatmap
