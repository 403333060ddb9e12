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

#ifndef AOGRASP_HEATMAP_HEATMAP_HPP_
#define AOGRASP_HEATMAP_HEATMAP_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"
#include "aograsp/sampler/grasp.hpp"

namespace aograsp::heatmap {

using geom::Point3;

struct SparseLabels {
  std::vector<Point3> points;
  std::vector<std::int8_t> polarity;  // +1 success, -1 failure

  std::size_t size() const { return points.size(); }
  void validate() const;
};

struct HeatmapConfig {
  std::size_t k = 15;
  double r = 0.04;
  double lambda_pos = 2.0;
  double lambda_neg = 0.0;

  void validate() const;
};

// Contact points of the labeled grasps (success +1, failure -1); unlabeled
// grasps are skipped.
SparseLabels labels_from_grasps(const geom::PointCloud& cloud, const std::vector<sampler::Grasp>& grasps);

// Per point: 0 when the nearest positive label is farther than r; otherwise
// min(1, sum max(0, w) / k) over the k nearest labels, with
// w = 1 - (lambda_pos / r) d for positives and w = lambda_neg (1 - d / r)
// for negatives. Throws "no labels" when labels are empty.
std::vector<double> densify(const geom::PointCloud& cloud, const SparseLabels& labels, const HeatmapConfig& cfg,
                            std::size_t threads = 1);

// Reference O(n m log m) implementation of the same contract.
std::vector<double> densify_bruteforce(const geom::PointCloud& cloud, const SparseLabels& labels,
                                       const HeatmapConfig& cfg);

// "AOHM" | u32 count | f32[count], little endian.
void write_aohm(std::ostream& out, const std::vector<double>& heat);
void write_aohm(const std::filesystem::path& path, const std::vector<double>& heat);
std::vector<double> read_aohm(std::istream& in);
std::vector<double> read_aohm(const std::filesystem::path& path);

// Point cloud coloured by heat, for viewing.
void write_heat_ply(const std::filesystem::path& path, const geom::PointCloud& cloud, const std::vector<double>& heat);

}  // namespace aograsp::heatmap

#endif  // AOGRASP_HEATMAP_HEATMAP_HPP_
