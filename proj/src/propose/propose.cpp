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


#include "aograsp/propose/propose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/geom/neighbors.hpp"
#include "aograsp/sampler/sampler.hpp"
#include "json.hpp"

namespace aograsp::propose {

using json = nlohmann::ordered_json;

void OrientationTable::validate() const {
  if (rotations.size() != points.size() || confidence.size() != points.size())
    throw Error("orientation table: attribute counts differ");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) throw Error("orientation table: non-finite point " + std::to_string(i));
    if (!(std::abs(rotations[i].norm() - 1.0) <= 1e-6))
      throw Error("orientation table: quaternion " + std::to_string(i) + " is not unit length");
    if (!std::isfinite(confidence[i])) throw Error("orientation table: non-finite confidence " + std::to_string(i));
  }
}

std::string table_to_jsonl(const OrientationTable& table) {
  table.validate();
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& p = table.points[i];
    const auto& q = table.rotations[i];
    json j;
    j["p"] = {p.x(), p.y(), p.z()};
    j["q"] = {q.w(), q.x(), q.y(), q.z()};
    j["conf"] = table.confidence[i];
    out += j.dump();
    out += '\n';
  }
  return out;
}

OrientationTable table_from_jsonl(const std::string& text) {
  OrientationTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const auto p = j.at("p").get<std::vector<double>>();
      const auto q = j.at("q").get<std::vector<double>>();
      if (p.size() != 3 || q.size() != 4) throw Error("p needs 3 values and q needs 4");
      const Eigen::Quaterniond quat(q[0], q[1], q[2], q[3]);
      if (!(std::abs(quat.norm() - 1.0) <= 1e-6)) throw Error("quaternion is not unit length");
      table.points.emplace_back(p[0], p[1], p[2]);
      table.rotations.push_back(quat);
      table.confidence.push_back(j.contains("conf") ? j.at("conf").get<double>() : 1.0);
    } catch (const json::exception& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  table.validate();
  return table;
}

void save_table(const std::filesystem::path& path, const OrientationTable& table) {
  io::write_file_atomic(path, table_to_jsonl(table));
}

OrientationTable load_table(const std::filesystem::path& path) { return table_from_jsonl(io::read_file(path)); }

std::vector<Eigen::Matrix3d> assign_orientations(const geom::PointCloud& cloud, const OrientationTable& table) {
  if (table.empty()) throw Error("assign_orientations: empty orientation table");
  table.validate();
  const geom::NeighborIndex index(table.points);
  std::vector<Eigen::Matrix3d> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud.points) out.push_back(table.rotations[index.nearest(p)].toRotationMatrix());
  return out;
}

std::vector<Eigen::Matrix3d> geometric_fallback_orientations(const geom::PointCloud& cloud, std::size_t k) {
  if (!cloud.has_normals()) throw Error("geometric fallback: cloud has no normals");
  if (cloud.empty()) return {};
  const geom::NeighborIndex index(cloud.points);
  std::vector<Eigen::Matrix3d> out;
  out.reserve(cloud.size());
  std::vector<Point3> local;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto nb = index.knn(cloud.points[i], std::max<std::size_t>(k, 1));
    local.clear();
    for (std::size_t j : nb.indices) local.push_back(cloud.points[j]);
    out.push_back(sampler::semantic_orientation(cloud.normals[i], local, 0.0, 0));
  }
  return out;
}

OrientationTable fallback_table(const geom::PointCloud& cloud, std::size_t m, std::size_t k) {
  const auto rotations = geometric_fallback_orientations(cloud, k);
  std::vector<std::size_t> keep;
  if (m >= cloud.size()) {
    keep.resize(cloud.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
  } else {
    keep = geom::farthest_point_sample(cloud, m);
  }
  OrientationTable table;
  for (std::size_t i : keep) {
    table.points.push_back(cloud.points[i]);
    table.rotations.emplace_back(rotations[i]);
    table.rotations.back().normalize();
    table.confidence.push_back(1.0);
  }
  return table;
}

const char* to_string(OrientationSource s) {
  return s == OrientationSource::provider ? "provider" : "geometric_fallback";
}

std::vector<GraspProposal> top_k_proposals(const geom::PointCloud& cloud, std::span<const double> scores,
                                           std::span<const Eigen::Matrix3d> rotations, OrientationSource source,
                                           const ProposalOptions& opts, std::vector<std::string>* warnings) {
  if (opts.k == 0) throw Error("top_k_proposals: k must be >= 1");
  if (scores.size() != cloud.size() || rotations.size() != cloud.size())
    throw Error("top_k_proposals: scores, rotations and cloud must be aligned");
  if (!(opts.min_separation >= 0.0)) throw Error("top_k_proposals: min_separation must be non-negative");
  for (double s : scores)
    if (!std::isfinite(s)) throw Error("top_k_proposals: non-finite score");
  std::size_t k = opts.k;
  if (k > cloud.size()) {
    if (warnings)
      warnings->push_back("requested " + std::to_string(k) + " proposals but the cloud has " +
                          std::to_string(cloud.size()) + " points");
    k = cloud.size();
  }

  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<GraspProposal> out;
  const double sep2 = opts.min_separation * opts.min_separation;
  for (std::size_t i : order) {
    if (out.size() == k) break;
    if (sep2 > 0.0) {
      bool close = false;
      for (const auto& p : out)
        if (geom::squared_distance(cloud.points[p.point_index], cloud.points[i]) < sep2) {
          close = true;
          break;
        }
      if (close) continue;
    }
    GraspProposal p;
    p.grasp.t = cloud.points[i];
    p.grasp.R = rotations[i];
    p.grasp.contact_index = static_cast<std::uint32_t>(i);
    p.score = scores[i];
    p.rank = out.size() + 1;
    p.point_index = i;
    p.source = source;
    out.push_back(p);
  }
  return out;
}

std::string proposals_to_jsonl(const std::vector<GraspProposal>& proposals) {
  std::string out;
  for (const auto& p : proposals) {
    json j;
    j["rank"] = p.rank;
    j["score"] = p.score;
    j["point_index"] = p.point_index;
    j["source"] = to_string(p.source);
    j["t"] = {p.grasp.t.x(), p.grasp.t.y(), p.grasp.t.z()};
    json r = json::array();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.push_back(p.grasp.R(a, b));
    j["R"] = r;
    Eigen::Quaterniond q(p.grasp.R);
    q.normalize();
    j["q"] = {q.w(), q.x(), q.y(), q.z()};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace aograsp::propose
