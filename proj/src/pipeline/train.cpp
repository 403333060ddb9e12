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


#include <map>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/geom/cloud_io.hpp"
#include "aograsp/heatmap/heatmap.hpp"
#include "aograsp/learn/checkpoint.hpp"
#include "aograsp/pipeline/commands.hpp"
#include "aograsp/render/correspondences.hpp"
#include "aograsp/sampler/grasp.hpp"
#include "json.hpp"

namespace aograsp::pipeline {

namespace fs = std::filesystem;

learn::TrainingCloud make_training_cloud(const geom::PointCloud& cloud, const std::vector<sampler::Grasp>& grasps,
                                         const std::vector<double>& heat, bool sparse) {
  learn::TrainingCloud tc;
  tc.cloud = cloud;
  if (!sparse) {
    if (heat.size() != cloud.size()) throw Error("heatmap length differs from its cloud");
    tc.target = heat;
    return tc;
  }
  tc.target.assign(cloud.size(), 0.0);
  tc.weight.assign(cloud.size(), 0.0);
  for (const auto& g : grasps) {
    if (g.label == sampler::GraspLabel::unlabeled) continue;
    if (g.contact_index >= cloud.size()) throw Error("grasp contact index out of range");
    tc.weight[g.contact_index] = 1.0;
    // A point that has any success counts as positive.
    if (g.label == sampler::GraspLabel::success) tc.target[g.contact_index] = 1.0;
  }
  return tc;
}

TrainOutcome train_model(const fs::path& manifest_path, const PipelineConfig& cfg, const fs::path& out_dir,
                         const TrainOptions& opts) {
  cfg.validate();
  const DatasetManifest m = load_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  const bool sparse = opts.sparse_labels || cfg.train.sparse_labels;
  const bool pretrain = cfg.train.pretrain && !opts.no_pretrain;
  const std::uint64_t seed = opts.seed.value_or(cfg.train.seed);

  learn::TrainingSet set;
  std::map<std::string, std::size_t> cloud_of;
  for (const auto& r : m.records) {
    if (!r.ok() || r.split != "train") continue;
    if (!sparse && r.heatmap.empty())
      throw Error("train: record " + r.id + " has no heatmap; run densify first");
    const auto cloud = geom::read_aopc(dir / r.cloud);
    const auto grasps = sampler::load_grasps(dir / r.grasps);
    const std::vector<double> heat = sparse ? std::vector<double>{} : heatmap::read_aohm(dir / r.heatmap);
    cloud_of[r.id] = set.clouds.size();
    set.clouds.push_back(make_training_cloud(cloud, grasps, heat, sparse));
  }
  if (set.clouds.empty()) throw Error("train: the manifest has no usable train-split records");
  for (const auto& c : m.correspondences) {
    const auto a = cloud_of.find(c.a);
    const auto b = cloud_of.find(c.b);
    if (a == cloud_of.end() || b == cloud_of.end()) continue;
    learn::TrainingPair pair{a->second, b->second, {}};
    for (const auto& [i, j] : render::read_aocr(dir / c.path).pairs) pair.matches.emplace_back(i, j);
    set.pairs.push_back(std::move(pair));
  }

  fs::create_directories(out_dir);
  TrainOutcome out;
  out.train_clouds = set.clouds.size();
  out.train_pairs = set.pairs.size();

  learn::TrainConfig tcfg = cfg.train.finetune;
  tcfg.threads = opts.threads;
  nlohmann::ordered_json meta;
  meta["toolkit_version"] = kToolkitVersion;
  meta["sparse_labels"] = sparse;
  meta["pretrained"] = pretrain;
  meta["train_clouds"] = out.train_clouds;
  meta["train_pairs"] = out.train_pairs;
  meta["precision"] = learn::to_string(tcfg.precision);

  learn::ScorerNetwork net = learn::ScorerNetwork::initialized(cfg.network, derive_seed(seed, 1));
  if (pretrain) {
    learn::TrainConfig pcfg = tcfg;
    pcfg.optimizer.epochs = cfg.train.pretrain_epochs;
    auto res = learn::pretrain_siamese(set, net, pcfg, derive_seed(seed, 2));
    net = res.network;
    out.pretrain_history = std::move(res.history);
    write_if_changed(out_dir / "pretrain_loss.csv", learn::loss_history_csv(out.pretrain_history));
    std::ostringstream buf(std::ios::binary);
    learn::write_checkpoint(buf, learn::make_checkpoint(net, out.pretrain_history.size(), seed, "pretrain", meta.dump()));
    write_if_changed(out_dir / "pretrain.aock", buf.str());
  }
  auto res = learn::train_scorer(set, net, tcfg, derive_seed(seed, 3));
  out.finetune_history = std::move(res.history);
  write_if_changed(out_dir / "train_loss.csv", learn::loss_history_csv(out.finetune_history));
  std::ostringstream buf(std::ios::binary);
  learn::write_checkpoint(buf, learn::make_checkpoint(res.network, out.finetune_history.size(), seed,
                                                      pretrain ? "finetune" : "train", meta.dump()));
  out.checkpoint = out_dir / "model.aock";
  write_if_changed(out.checkpoint, buf.str());
  return out;
}

}  // namespace aograsp::pipeline
