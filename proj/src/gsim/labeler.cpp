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

#include "aograsp/gsim/labeler.hpp"

#include <algorithm>

#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"

namespace aograsp::gsim {

std::vector<EpisodeResult> run_episodes(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                                        const std::vector<sampler::Grasp>& grasps, const GripperModel& gripper,
                                        const EpisodeConfig& cfg, std::size_t threads) {
  std::vector<EpisodeResult> results(grasps.size());
  parallel_for(grasps.size(), resolve_thread_count(threads),
               [&](std::size_t i) { results[i] = run_episode(obj, state, grasps[i], gripper, cfg); });
  return results;
}

std::vector<sampler::Grasp> apply_labels(std::vector<sampler::Grasp> grasps, const std::vector<EpisodeResult>& results) {
  if (grasps.size() != results.size()) throw Error("apply_labels: size mismatch");
  for (std::size_t i = 0; i < grasps.size(); ++i) {
    grasps[i].label = results[i].label;
    grasps[i].failure_reason =
        results[i].failure_reason ? std::string(to_string(*results[i].failure_reason)) : std::string();
  }
  return grasps;
}

std::map<std::string, std::size_t> outcome_counts(const std::vector<sampler::Grasp>& labeled) {
  std::map<std::string, std::size_t> counts = {{"success", 0}};
  for (auto r : {FailureReason::spawn_collision, FailureReason::no_contact_on_close, FailureReason::wrong_link,
                 FailureReason::slip_during_motion, FailureReason::insufficient_displacement}) {
    counts[std::string(to_string(r))] = 0;
  }
  for (const auto& g : labeled) {
    switch (g.label) {
      case sampler::GraspLabel::success: ++counts["success"]; break;
      case sampler::GraspLabel::failure: ++counts[g.failure_reason.empty() ? "failure" : g.failure_reason]; break;
      case sampler::GraspLabel::unlabeled: ++counts["unlabeled"]; break;
    }
  }
  return counts;
}

std::string summary_csv(const std::map<std::string, std::size_t>& counts) {
  static const char* kOrder[] = {"success", "spawn_collision", "no_contact_on_close", "wrong_link",
                                 "slip_during_motion", "insufficient_displacement"};
  std::string out = "outcome,count\n";
  for (const char* key : kOrder) {
    const auto it = counts.find(key);
    out += std::string(key) + "," + std::to_string(it == counts.end() ? 0 : it->second) + "\n";
  }
  for (const auto& [key, n] : counts) {
    if (std::find(std::begin(kOrder), std::end(kOrder), key) == std::end(kOrder)) {
      out += key + "," + std::to_string(n) + "\n";
    }
  }
  return out;
}

}  // namespace aograsp::gsim
