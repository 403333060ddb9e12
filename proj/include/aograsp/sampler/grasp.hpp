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

#ifndef AOGRASP_SAMPLER_GRASP_HPP_
#define AOGRASP_SAMPLER_GRASP_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::sampler {

enum class GraspLabel { unlabeled, success, failure };
enum class Provenance { semantic, geometric };

// Gripper pose. Columns of R: x = finger closing axis, y = x cross-completion,
// z = approach direction (pointing from the gripper into the surface).
struct Grasp {
  geom::Point3 t = geom::Point3::Zero();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  GraspLabel label = GraspLabel::unlabeled;
  std::uint32_t contact_index = 0;
  Provenance provenance = Provenance::geometric;
  std::string failure_reason;  // empty unless labeled failure

  Eigen::Vector3d closing_axis() const { return R.col(0); }
  Eigen::Vector3d approach() const { return R.col(2); }

  bool operator==(const Grasp&) const = default;
};

// Throws unless R is orthonormal with det +1 (both within tol).
void check_rotation(const Eigen::Matrix3d& R, double tol = 1e-9);

std::string_view to_string(GraspLabel label);
std::string_view to_string(Provenance provenance);

// One JSON object per line:
// {"t":[x,y,z],"R":[9 row-major],"label":..,"contact_index":..,"provenance":..,"failure_reason":..}
std::string grasp_to_json(const Grasp& grasp);
Grasp grasp_from_json(std::string_view line);
std::string grasps_to_jsonl(const std::vector<Grasp>& grasps);
std::vector<Grasp> grasps_from_jsonl(std::string_view text);
void save_grasps(const std::filesystem::path& path, const std::vector<Grasp>& grasps);
std::vector<Grasp> load_grasps(const std::filesystem::path& path);

}  // namespace aograsp::sampler

#endif  // AOGRASP_SAMPLER_GRASP_HPP_
