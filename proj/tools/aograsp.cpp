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


// aograsp: dataset generation, densification, training, proposal and
// evaluation from the command line.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/pipeline/commands.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace aograsp;

namespace {

void print_warnings(const pipeline::Warnings& warnings) {
  for (const auto& w : warnings) std::cerr << nlohmann::json{{"warning", w}}.dump() << "\n";
}

int fail(const std::string& command, const std::string& message, int code = 1) {
  std::cerr << nlohmann::json{{"error", message}, {"command", command}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actionable grasp toolkit for articulated objects", "aograsp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pipeline::kToolkitVersion));
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker count (0: AOGRASP_THREADS, else all cores)");

  auto* gen = app.add_subcommand("gen-dataset", "Render, sample and label a dataset");
  std::string gen_config, gen_out;
  gen->add_option("config", gen_config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  gen->add_option("-o,--out", gen_out, "Output directory")->required();

  auto* dens = app.add_subcommand("densify", "Write pseudo ground-truth heatmaps");
  std::string dens_manifest;
  dens->add_option("manifest", dens_manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);

  auto* train = app.add_subcommand("train", "Pretrain and finetune the scorer");
  std::string train_manifest, train_out, train_config;
  bool no_pretrain = false, sparse = false;
  std::optional<std::uint64_t> train_seed;
  train->add_option("manifest", train_manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  train->add_option("-o,--out", train_out, "Checkpoint directory")->required();
  train->add_option("-c,--config", train_config, "Config whose network/train sections override the manifest's")
      ->check(CLI::ExistingFile);
  train->add_flag("--no-pretrain", no_pretrain, "Skip Siamese pretraining");
  train->add_flag("--sparse-labels", sparse, "Train on binary grasp labels instead of heatmaps");
  train->add_option("--seed", train_seed, "Override train.seed");

  auto* prop = app.add_subcommand("propose", "Top-k grasp proposals for one cloud");
  std::string prop_ckpt, prop_cloud, prop_out, prop_table, prop_ply, prop_config;
  std::size_t prop_k = 10, prop_neighbors = 20;
  double prop_sep = 0.0;
  prop->add_option("checkpoint", prop_ckpt, "Model checkpoint (.aock)")->required()->check(CLI::ExistingFile);
  prop->add_option("cloud", prop_cloud, "Point cloud (.aopc)")->required()->check(CLI::ExistingFile);
  prop->add_option("-o,--out", prop_out, "Proposal JSONL output")->required();
  prop->add_option("-k", prop_k, "Number of proposals")->capture_default_str();
  prop->add_option("--orientations", prop_table, "Orientation table (JSONL)")->check(CLI::ExistingFile);
  prop->add_option("--neighbors", prop_neighbors, "Neighbors for the geometric fallback")->capture_default_str();
  prop->add_option("--min-separation", prop_sep, "Suppression radius between proposals")->capture_default_str();
  prop->add_option("--ply", prop_ply, "Heat-coloured PLY output (default: <out>.ply)");
  prop->add_option("-c,--config", prop_config, "Config the checkpoint must match")->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("evaluate", "Simulated top-k evaluation");
  std::string eval_manifest, eval_ckpt, eval_out, eval_mode = "model", eval_split = "test";
  std::optional<std::size_t> eval_k;
  bool random_scores = false;
  eval->add_option("manifest", eval_manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  eval->add_option("--checkpoint", eval_ckpt, "Model checkpoint (model mode)")->check(CLI::ExistingFile);
  eval->add_option("--mode", eval_mode, "model, random or oracle")
      ->check(CLI::IsMember({"model", "random", "oracle"}))
      ->capture_default_str();
  eval->add_flag("--random-scores", random_scores, "Same as --mode random");
  eval->add_option("--split", eval_split, "train, test or all")
      ->check(CLI::IsMember({"train", "test", "all"}))
      ->capture_default_str();
  eval->add_option("-k", eval_k, "Proposals per cloud (default: evaluate.k)");
  eval->add_option("-o,--out", eval_out, "Report prefix; writes <prefix>.json and <prefix>.csv")->required();

  auto* insp = app.add_subcommand("inspect", "Print manifest statistics");
  std::string insp_manifest;
  insp->add_option("manifest", insp_manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("parse", e.what(), e.get_exit_code() ? e.get_exit_code() : 2);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const std::size_t workers = resolve_thread_count(threads);
    pipeline::Warnings warnings;
    if (*gen) {
      const auto cfg = pipeline::load_config(gen_config);
      const auto m = pipeline::gen_dataset(cfg, gen_out, workers, &warnings);
      print_warnings(warnings);
      std::size_t failed = 0;
      for (const auto& r : m.records) failed += !r.ok();
      std::cout << "wrote " << (fs::path(gen_out) / "manifest.json").string() << " (" << m.records.size()
                << " records, " << failed << " failed)\n";
    } else if (*dens) {
      const auto m = pipeline::densify_dataset(dens_manifest, workers, std::nullopt, &warnings);
      print_warnings(warnings);
      std::cout << "densified " << m.records.size() << " records\n";
    } else if (*train) {
      auto cfg = pipeline::parse_config(pipeline::load_manifest(train_manifest).config);
      if (!train_config.empty()) {
        const auto over = pipeline::load_config(train_config);
        cfg.network = over.network;
        cfg.train = over.train;
      }
      pipeline::TrainOptions opts;
      opts.no_pretrain = no_pretrain;
      opts.sparse_labels = sparse;
      opts.threads = workers;
      opts.seed = train_seed;
      const auto out = pipeline::train_model(train_manifest, cfg, train_out, opts);
      std::cout << "wrote " << out.checkpoint.string() << " (" << out.train_clouds << " clouds, " << out.train_pairs
                << " pairs)\n";
    } else if (*prop) {
      pipeline::ProposeOptions opts;
      opts.k = prop_k;
      opts.orientation_neighbors = prop_neighbors;
      opts.min_separation = prop_sep;
      if (!prop_table.empty()) opts.table = prop_table;
      if (!prop_config.empty()) opts.expected_network = pipeline::load_config(prop_config).network;
      const fs::path ply = prop_ply.empty() ? fs::path(prop_out + ".ply") : fs::path(prop_ply);
      pipeline::propose_cloud(prop_ckpt, prop_cloud, opts, prop_out, ply, &warnings);
      print_warnings(warnings);
      std::cout << "wrote " << prop_out << " and " << ply.string() << "\n";
    } else if (*eval) {
      pipeline::EvaluateOptions opts;
      opts.mode = random_scores ? pipeline::ScoreMode::random : pipeline::parse_score_mode(eval_mode);
      if (!eval_ckpt.empty()) opts.checkpoint = eval_ckpt;
      opts.split = eval_split;
      opts.k = eval_k;
      opts.threads = workers;
      const auto report = pipeline::evaluate(eval_manifest, opts);
      pipeline::write_if_changed(eval_out + ".json", pipeline::report_to_json(report));
      pipeline::write_if_changed(eval_out + ".csv", pipeline::report_to_csv(report));
      for (const auto& e : report.errors) std::cerr << nlohmann::json{{"excluded", e}}.dump() << "\n";
      std::printf("%s top-%zu success rate on %s: %.4f over %zu clouds (%zu excluded; internal metric)\n",
                  report.mode.c_str(), report.k, report.split.c_str(), report.mean_rate, report.clouds.size(),
                  report.excluded);
    } else if (*insp) {
      std::cout << pipeline::inspect_manifest(insp_manifest);
    }
  } catch (const std::exception& e) {
    return fail(command, e.what());
  }
  return 0;
}
