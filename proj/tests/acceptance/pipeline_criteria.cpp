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


// Criteria 8-10: desk-scale end-to-end runs of the pipeline. Everything is
// written below a scratch directory that is removed on exit.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <unistd.h>

#include "acceptance/criteria.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/pipeline/commands.hpp"
#include "aograsp/pipeline/config.hpp"

namespace acceptance {
namespace {

namespace fs = std::filesystem;
using namespace aograsp;

constexpr double kPipelineBudgetSeconds = 30.0 * 60.0;
constexpr double kModelOverRandom = 2.0;
constexpr std::uint64_t kAblationSeeds[] = {1, 2, 3};

fs::path configs_dir() { return AOGRASP_ACCEPTANCE_CONFIGS; }

struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() / ("aograsp_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
};

const fs::path& scratch() {
  static Scratch s;
  return s.root;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Generates and densifies the desk dataset once; later callers reuse it.
fs::path desk_manifest(const pipeline::PipelineConfig& cfg, std::size_t threads) {
  const fs::path dir = scratch() / "desk";
  const fs::path manifest = dir / "manifest.json";
  pipeline::gen_dataset(cfg, dir, threads);
  pipeline::densify_dataset(manifest, threads);
  return manifest;
}

double rate(const fs::path& manifest, pipeline::ScoreMode mode, const std::string& split, std::size_t threads,
            const std::optional<fs::path>& ckpt = std::nullopt) {
  pipeline::EvaluateOptions o;
  o.mode = mode;
  o.split = split;
  o.checkpoint = ckpt;
  o.threads = threads;
  return pipeline::evaluate(manifest, o).mean_rate;
}

// --- 8. end-to-end desk run ---------------------------------------------------

Outcome end_to_end() {
  const std::size_t threads = resolve_thread_count(0);
  const auto cfg = pipeline::load_config(configs_dir() / "desk.json");
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path manifest = desk_manifest(cfg, threads);
  pipeline::TrainOptions topts;
  topts.threads = threads;
  const auto trained = pipeline::train_model(manifest, cfg, scratch() / "desk_model", topts);

  using pipeline::ScoreMode;
  const double model_test = rate(manifest, ScoreMode::model, "test", threads, trained.checkpoint);
  const double model_train = rate(manifest, ScoreMode::model, "train", threads, trained.checkpoint);
  const double random_test = rate(manifest, ScoreMode::random, "test", threads);
  const double oracle_train = rate(manifest, ScoreMode::oracle, "train", threads);
  const double elapsed = seconds_since(t0);

  const bool fast = elapsed < kPipelineBudgetSeconds;
  const bool beats_random = model_test > 0.0 && model_test >= kModelOverRandom * random_test;
  const bool oracle_ok = oracle_train >= model_train;
  return {fast && beats_random && oracle_ok,
          format("held-out model %.4f vs random %.4f (need >= %.1fx); train oracle %.4f vs model %.4f; "
                 "%zu train clouds; %.0f s on %zu threads (budget %.0f s)",
                 model_test, random_test, kModelOverRandom, oracle_train, model_train, trained.train_clouds, elapsed,
                 threads, kPipelineBudgetSeconds)};
}

// --- 9. dense vs sparse labels ---------------------------------------------------

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome ablation_direction() {
  const std::size_t threads = resolve_thread_count(0);
  const auto cfg = pipeline::load_config(configs_dir() / "desk.json");
  const fs::path manifest = desk_manifest(cfg, threads);
  std::vector<double> dense, sparse;
  std::ostringstream per_seed;
  for (std::uint64_t seed : kAblationSeeds) {
    for (bool sparse_labels : {false, true}) {
      pipeline::TrainOptions o;
      o.no_pretrain = true;
      o.sparse_labels = sparse_labels;
      o.seed = seed;
      o.threads = threads;
      const fs::path out = scratch() / ((sparse_labels ? "sparse_" : "dense_") + std::to_string(seed));
      const auto trained = pipeline::train_model(manifest, cfg, out, o);
      const double r = rate(manifest, pipeline::ScoreMode::model, "test", threads, trained.checkpoint);
      (sparse_labels ? sparse : dense).push_back(r);
    }
    per_seed << " s" << seed << "=" << format("%.4f/%.4f", dense.back(), sparse.back());
  }
  const double md = median3(dense), ms = median3(sparse);
  return {md >= ms, format("held-out median dense %.4f vs sparse %.4f; dense/sparse per seed:", md, ms) + per_seed.str()};
}

// --- 10. byte-for-byte reruns -------------------------------------------------------

// Every file below dir, keyed by relative path.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
  return files;
}

std::map<std::string, std::string> determinism_run(const pipeline::PipelineConfig& cfg, const fs::path& dir) {
  const fs::path data = dir / "data";
  pipeline::gen_dataset(cfg, data, 1);
  pipeline::densify_dataset(data / "manifest.json", 1);
  pipeline::TrainOptions t;
  t.threads = 1;
  const auto trained = pipeline::train_model(data / "manifest.json", cfg, dir / "model", t);
  for (auto mode : {pipeline::ScoreMode::model, pipeline::ScoreMode::random, pipeline::ScoreMode::oracle}) {
    pipeline::EvaluateOptions o;
    o.mode = mode;
    o.split = "all";
    o.checkpoint = trained.checkpoint;
    const auto report = pipeline::evaluate(data / "manifest.json", o);
    const std::string stem = std::string("report_") + pipeline::to_string(mode);
    std::ofstream(dir / (stem + ".json"), std::ios::binary) << pipeline::report_to_json(report);
    std::ofstream(dir / (stem + ".csv"), std::ios::binary) << pipeline::report_to_csv(report);
  }
  return tree(dir);
}

Outcome determinism() {
  const auto cfg = pipeline::load_config(configs_dir() / "determinism.json");
  if (cfg.train.finetune.precision != learn::Precision::f64) return {false, "determinism config is not 64-bit"};
  const auto a = determinism_run(cfg, scratch() / "rerun_a");
  const auto b = determinism_run(cfg, scratch() / "rerun_b");
  std::size_t differing = 0, checkpoints = 0, reports = 0;
  std::string first;
  for (const auto& [name, bytes] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != bytes) {
      if (differing++ == 0) first = name;
    }
    if (name.ends_with(".aock")) ++checkpoints;
    if (name.starts_with("report_")) ++reports;
  }
  const bool same_set = a.size() == b.size();
  const bool covered = a.count("data/manifest.json") == 1 && checkpoints == 2 && reports == 6;
  return {differing == 0 && same_set && covered,
          format("%zu files compared (manifest, %zu checkpoints, %zu reports), %zu differ%s%s", a.size(), checkpoints,
                 reports, differing, first.empty() ? "" : "; first: ", first.c_str())};
}

}  // namespace

std::vector<Criterion> pipeline_criteria() {
  return {
      {8, "desk-scale end-to-end", end_to_end},
      {9, "dense vs sparse labels", ablation_direction},
      {10, "byte-for-byte determinism", determinism},
  };
}

}  // namespace acceptance
