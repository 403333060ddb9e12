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


#ifndef AOGRASP_PIPELINE_COMMANDS_HPP_
#define AOGRASP_PIPELINE_COMMANDS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aograsp/learn/trainer.hpp"
#include "aograsp/pipeline/config.hpp"
#include "aograsp/pipeline/manifest.hpp"

namespace aograsp::pipeline {

using Warnings = std::vector<std::string>;

// Renders, samples and labels every (instance, state, view) into out_dir and
// writes out_dir/manifest.json. Completed records (with a done sidecar whose
// files exist) are skipped, and no output file is rewritten with identical
// bytes. Per-record errors are recorded; throws only if every record failed.
DatasetManifest gen_dataset(const PipelineConfig& cfg, const std::filesystem::path& out_dir, std::size_t threads = 1,
                            Warnings* warnings = nullptr);

// Pseudo ground-truth heatmaps for every ok record. Positives are the sampled
// points of successful grasps, negatives those of failures; a record with no
// labels gets an all-zero heatmap and a warning. Uses the manifest's heatmap
// settings unless an override is given.
DatasetManifest densify_dataset(const std::filesystem::path& manifest_path, std::size_t threads = 1,
                                const std::optional<heatmap::HeatmapConfig>& override_cfg = std::nullopt,
                                Warnings* warnings = nullptr);

struct TrainOptions {
  bool no_pretrain = false;   // overrides train.pretrain
  bool sparse_labels = false; // or'ed with train.sparse_labels
  std::size_t threads = 1;
  std::optional<std::uint64_t> seed;  // overrides train.seed
};

struct TrainOutcome {
  std::filesystem::path checkpoint;
  std::vector<learn::LossRecord> pretrain_history;
  std::vector<learn::LossRecord> finetune_history;
  std::size_t train_clouds = 0;
  std::size_t train_pairs = 0;
};

// Trains on the manifest's "train" split. Writes out_dir/model.aock,
// out_dir/train_loss.csv and, when pretraining, out_dir/pretrain.aock and
// out_dir/pretrain_loss.csv.
TrainOutcome train_model(const std::filesystem::path& manifest_path, const PipelineConfig& cfg,
                         const std::filesystem::path& out_dir, const TrainOptions& opts = {});

// Per-point training targets for one labeled cloud: dense heat with unit
// weights, or (sparse) 1/0 at the sampled points of successes/failures with
// weight 1 there and 0 elsewhere.
learn::TrainingCloud make_training_cloud(const geom::PointCloud& cloud, const std::vector<sampler::Grasp>& grasps,
                                         const std::vector<double>& heat, bool sparse);

struct ProposeOptions {
  std::size_t k = 10;
  std::optional<std::filesystem::path> table;  // orientation provider file
  std::size_t orientation_neighbors = 20;
  double min_separation = 0.0;
  // When set, the checkpoint's network must match it exactly.
  std::optional<learn::NetworkConfig> expected_network;
};

// Scores a cloud with a checkpoint, attaches orientations and writes the
// top-k as JSON lines to out_jsonl and, if given, a heat-coloured PLY.
// A network mismatch throws an error that prints both configurations.
std::string propose_cloud(const std::filesystem::path& checkpoint, const std::filesystem::path& cloud_path,
                          const ProposeOptions& opts, const std::filesystem::path& out_jsonl,
                          const std::optional<std::filesystem::path>& ply = std::nullopt,
                          Warnings* warnings = nullptr);

enum class ScoreMode { model, random, oracle };

const char* to_string(ScoreMode m);
ScoreMode parse_score_mode(const std::string& text);

struct EvaluateOptions {
  ScoreMode mode = ScoreMode::model;
  std::optional<std::filesystem::path> checkpoint;  // required for model mode
  std::string split = "test";                       // "train", "test" or "all"
  std::optional<std::size_t> k;                     // overrides evaluate.k
  std::size_t threads = 1;
};

struct CloudResult {
  std::string record;
  std::string instance;
  bool closed = true;
  double distance = 0.0;
  double yaw_deg = 0.0;
  std::size_t evaluated = 0;
  std::size_t successes = 0;
  double rate = 0.0;
};

struct BinStats {
  std::size_t count = 0;
  double mean_rate = 0.0;
};

struct EvalReport {
  std::string mode;
  std::string split;
  std::size_t k = 0;
  std::vector<CloudResult> clouds;
  double mean_rate = 0.0;    // mean over clouds of per-cloud top-k rates
  BinStats closed;
  BinStats open;
  std::vector<double> distance_edges;
  std::vector<double> yaw_edges;
  std::vector<std::vector<BinStats>> bins;  // [distance][yaw]
  std::map<std::string, std::size_t> outcomes;
  std::size_t excluded = 0;  // records skipped because of errors
  std::vector<std::string> errors;
};

EvalReport evaluate(const std::filesystem::path& manifest_path, const EvaluateOptions& opts);

std::string report_to_json(const EvalReport& r);
std::string report_to_csv(const EvalReport& r);

// Human-readable counts for a manifest.
std::string inspect_manifest(const std::filesystem::path& manifest_path);

}  // namespace aograsp::pipeline

#endif  // AOGRASP_PIPELINE_COMMANDS_HPP_
