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


#ifndef AOGRASP_PROPOSE_PROPOSE_HPP_
#define AOGRASP_PROPOSE_PROPOSE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "aograsp/geom/point_cloud.hpp"
#include "aograsp/sampler/grasp.hpp"

namespace aograsp::propose {

using geom::Point3;

// Orientations supplied by an external grasp generator (or the geometric
// fallback), one per table point.
struct OrientationTable {
  std::vector<Point3> points;
  std::vector<Eigen::Quaterniond> rotations;  // unit norm within 1e-6
  std::vector<double> confidence;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void validate() const;
};

// JSON lines {"p":[x,y,z],"q":[w,x,y,z],"conf":c}. Errors carry "line N: ".
std::string table_to_jsonl(const OrientationTable& table);
OrientationTable table_from_jsonl(const std::string& text);
void save_table(const std::filesystem::path& path, const OrientationTable& table);
OrientationTable load_table(const std::filesystem::path& path);

// Each cloud point takes the rotation of its nearest table point (lowest
// table index on ties). Throws on an empty table.
std::vector<Eigen::Matrix3d> assign_orientations(const geom::PointCloud& cloud, const OrientationTable& table);

// Approach along -normal, closing axis along the minor principal direction of
// the k nearest neighbors projected onto the approach plane. Needs normals.
std::vector<Eigen::Matrix3d> geometric_fallback_orientations(const geom::PointCloud& cloud, std::size_t k = 20);

// A table built from the fallback on an FPS subset of m points (all points if
// m >= size), confidence 1. Mirrors a provider that runs on a coarser cloud.
OrientationTable fallback_table(const geom::PointCloud& cloud, std::size_t m, std::size_t k = 20);

enum class OrientationSource { provider, geometric_fallback };

const char* to_string(OrientationSource s);

struct GraspProposal {
  sampler::Grasp grasp;   // t = point position, R = assigned rotation
  double score = 0.0;
  std::size_t rank = 0;   // 1-based
  std::size_t point_index = 0;
  OrientationSource source = OrientationSource::provider;
};

struct ProposalOptions {
  std::size_t k = 10;
  double min_separation = 0.0;  // greedy suppression radius; 0 disables it
};

// The k highest-scoring points (lower index first on equal scores), ranked
// 1..k. k > size yields every point plus a warning.
std::vector<GraspProposal> top_k_proposals(const geom::PointCloud& cloud, std::span<const double> scores,
                                           std::span<const Eigen::Matrix3d> rotations, OrientationSource source,
                                           const ProposalOptions& opts = {},
                                           std::vector<std::string>* warnings = nullptr);

// One line per proposal: rank, score, point_index, source, t, R (row-major), q.
std::string proposals_to_jsonl(const std::vector<GraspProposal>& proposals);

}  // namespace aograsp::propose

#endif  // AOGRASP_PROPOSE_PROPOSE_HPP_
