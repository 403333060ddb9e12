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

#ifndef AOGRASP_GSIM_LABELER_HPP_
#define AOGRASP_GSIM_LABELER_HPP_

#include <map>
#include <string>
#include <vector>

#include "aograsp/gsim/episode.hpp"

namespace aograsp::gsim {

// Runs one episode per grasp across `threads` workers (0 = default). Results
// are in input order and independent of the thread count.
std::vector<EpisodeResult> run_episodes(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                                        const std::vector<sampler::Grasp>& grasps, const GripperModel& gripper,
                                        const EpisodeConfig& cfg, std::size_t threads = 0);

// Copies label and failure reason onto the grasps.
std::vector<sampler::Grasp> apply_labels(std::vector<sampler::Grasp> grasps, const std::vector<EpisodeResult>& results);

// Outcome -> count for "success" and every failure reason (zeros included).
std::map<std::string, std::size_t> outcome_counts(const std::vector<sampler::Grasp>& labeled);

// "outcome,count" CSV with a header row, in a fixed outcome order.
std::string summary_csv(const std::map<std::string, std::size_t>& counts);

}  // namespace aograsp::gsim

#endif  // AOGRASP_GSIM_LABELER_HPP_
