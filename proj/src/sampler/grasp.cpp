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

#include "aograsp/sampler/grasp.hpp"

#include <cmath>

#include "json.hpp"

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"

namespace aograsp::sampler {

using json = nlohmann::ordered_json;

void check_rotation(const Eigen::Matrix3d& R, double tol) {
  if (!R.allFinite()) throw Error("rotation has non-finite entries");
  if ((R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol) {
    throw Error("rotation is not orthonormal");
  }
  if (std::abs(R.determinant() - 1.0) > tol) throw Error("rotation determinant is not +1");
}

std::string_view to_string(GraspLabel label) {
  switch (label) {
    case GraspLabel::success: return "success";
    case GraspLabel::failure: return "failure";
    default: return "unlabeled";
  }
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::semantic ? "semantic" : "geometric";
}

std::string grasp_to_json(const Grasp& g) {
  json j;
  j["t"] = {g.t.x(), g.t.y(), g.t.z()};
  json r = json::array();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) r.push_back(g.R(a, b));
  }
  j["R"] = r;
  j["label"] = to_string(g.label);
  j["contact_index"] = g.contact_index;
  j["provenance"] = to_string(g.provenance);
  j["failure_reason"] = g.failure_reason.empty() ? json(nullptr) : json(g.failure_reason);
  return j.dump();
}

Grasp grasp_from_json(std::string_view line) {
  try {
    const json j = json::parse(line);
    Grasp g;
    const auto& t = j.at("t");
    if (t.size() != 3) throw Error("grasp record: \"t\" must have 3 entries");
    g.t = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
    const auto& r = j.at("R");
    if (r.size() != 9) throw Error("grasp record: \"R\" must have 9 entries");
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) g.R(a, b) = r[3 * a + b].get<double>();
    }
    check_rotation(g.R, 1e-6);
    const auto label = j.at("label").get<std::string>();
    if (label == "success") g.label = GraspLabel::success;
    else if (label == "failure") g.label = GraspLabel::failure;
    else if (label == "unlabeled") g.label = GraspLabel::unlabeled;
    else throw Error("grasp record: unknown label \"" + label + "\"");
    g.contact_index = j.at("contact_index").get<std::uint32_t>();
    const auto prov = j.at("provenance").get<std::string>();
    if (prov == "semantic") g.provenance = Provenance::semantic;
    else if (prov == "geometric") g.provenance = Provenance::geometric;
    else throw Error("grasp record: unknown provenance \"" + prov + "\"");
    if (j.contains("failure_reason") && !j["failure_reason"].is_null()) {
      g.failure_reason = j["failure_reason"].get<std::string>();
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(std::string("grasp record: ") + e.what());
  }
}

std::string grasps_to_jsonl(const std::vector<Grasp>& grasps) {
  std::string out;
  for (const auto& g : grasps) {
    out += grasp_to_json(g);
    out += '\n';
  }
  return out;
}

std::vector<Grasp> grasps_from_jsonl(std::string_view text) {
  std::vector<Grasp> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(grasp_from_json(line));
      } catch (const Error& e) {
        throw Error("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    pos = end + 1;
  }
  return out;
}

void save_grasps(const std::filesystem::path& path, const std::vector<Grasp>& grasps) {
  io::write_file_atomic(path, grasps_to_jsonl(grasps));
}

std::vector<Grasp> load_grasps(const std::filesystem::path& path) { return grasps_from_jsonl(io::read_file(path)); }

}  // namespace aograsp::sampler
