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


#ifndef AOGRASP_PIPELINE_CONFIG_HPP_
#define AOGRASP_PIPELINE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aograsp/artobj/procedural.hpp"
#include "aograsp/gsim/episode.hpp"
#include "aograsp/heatmap/heatmap.hpp"
#include "aograsp/learn/network.hpp"
#include "aograsp/learn/trainer.hpp"
#include "aograsp/render/camera.hpp"
#include "aograsp/render/renderer.hpp"
#include "aograsp/sampler/sampler.hpp"

namespace aograsp::pipeline {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Either a procedural recipe or an object description file.
struct ObjectSpec {
  std::string id;
  std::string split = "train";  // "train" or "test"
  std::optional<std::filesystem::path> path;
  artobj::ProceduralKind kind = artobj::ProceduralKind::cabinet_door;
  artobj::ProceduralParams params;
  std::uint64_t seed = 0;
};

struct DatasetConfig {
  std::vector<ObjectSpec> objects;
  std::size_t open_states = 9;            // plus the closed state
  std::size_t viewpoints_per_state = 20;
  std::size_t candidates_per_cloud = 200; // toolkit choice
  render::ViewpointRange viewpoints;
  render::RenderOptions render;           // render.threads is ignored
  double correspondence_eps = 0.005;
  std::uint64_t seed = 0;
};

struct TrainStageConfig {
  bool pretrain = true;
  std::size_t pretrain_epochs = 200;
  learn::TrainConfig finetune;   // optimizer (epochs apply to finetuning), weights, contrastive, precision
  bool sparse_labels = false;
  std::uint64_t seed = 0;
};

struct EvalConfig {
  std::size_t k = 10;
  std::size_t distance_bins = 3;
  std::size_t yaw_bins = 3;
  std::size_t orientation_neighbors = 20;
  std::uint64_t seed = 0;
};

struct PipelineConfig {
  DatasetConfig dataset;
  sampler::SamplingConfig sampler;
  gsim::GripperModel gripper;
  gsim::EpisodeConfig episode;
  heatmap::HeatmapConfig heatmap;
  learn::NetworkConfig network;
  TrainStageConfig train;
  EvalConfig evaluate;

  void validate() const;
};

// Every key is optional and defaults to the values above; unknown keys are
// errors. Angles are written in degrees (keys ending in _deg). Relative object
// paths resolve against base_dir.
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Full snapshot with every default spelled out. Deterministic, so two
// snapshots of the same settings compare equal as strings.
std::string config_to_json(const PipelineConfig& cfg);

}  // namespace aograsp::pipeline

#endif  // AOGRASP_PIPELINE_CONFIG_HPP_
