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


#ifndef AOGRASP_LEARN_TRAINER_HPP_
#define AOGRASP_LEARN_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"
#include "aograsp/learn/losses.hpp"
#include "aograsp/learn/network.hpp"
#include "aograsp/learn/optimizer.hpp"

namespace aograsp::learn {

enum class Precision { f64, f32 };

const char* to_string(Precision p);
Precision parse_precision(const std::string& text);

struct ContrastiveConfig {
  std::size_t pairs = 64;      // |Z|
  std::size_t negatives = 10;  // |N|
  double m_p = 0.1;
  double m_n = 1.4;
  double eps_corr = 0.005;     // negatives lie farther than this from the anchor's match

  void validate() const;
};

struct TrainingCloud {
  geom::PointCloud cloud;       // needs normals and curvature
  std::vector<double> target;   // per-point heat; may be empty for pretraining
  std::vector<double> weight;   // per-point loss weight; empty means all ones
};

struct TrainingPair {
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matches;
};

struct TrainingSet {
  std::vector<TrainingCloud> clouds;
  std::vector<TrainingPair> pairs;

  void validate(bool need_targets) const;
};

struct TrainConfig {
  OptimizerConfig optimizer;
  LossWeights weights;
  ContrastiveConfig contrastive;
  Precision precision = Precision::f64;
  std::size_t threads = 1;

  void validate() const;
};

struct LossRecord {
  std::size_t step = 0;   // 1-based optimizer step
  std::size_t epoch = 0;  // 0-based
  double lr = 0.0;
  double hc = 0.0;        // batch means
  double mse = 0.0;
  double total = 0.0;
};

struct TrainResult {
  ScorerNetwork network;
  std::vector<LossRecord> history;
};

using StepCallback = std::function<void(const LossRecord&)>;

// Minimizes the contrastive loss alone over pairs with at least one match.
// Each step samples |Z| matches (without replacement when enough exist) and
// |N| negatives per anchor. Throws when no pair has a match.
TrainResult pretrain_siamese(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg,
                             std::uint64_t seed, const StepCallback& on_step = {});

// Minimizes w.hc * L_HC + w.mse * L_MSE. Items are the matched pairs (the MSE
// term averages both views) or, without pairs, single clouds. A non-finite
// term aborts with the step and term name.
TrainResult train_scorer(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg,
                         std::uint64_t seed, const StepCallback& on_step = {});

// "step,epoch,lr,hc,mse,total" with full-precision values.
std::string loss_history_csv(const std::vector<LossRecord>& history);

// Mean total loss per epoch.
std::vector<double> epoch_means(const std::vector<LossRecord>& history);

}  // namespace aograsp::learn

#endif  // AOGRASP_LEARN_TRAINER_HPP_
