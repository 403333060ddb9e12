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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "aograsp/artobj/object_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/geom/cloud_io.hpp"
#include "aograsp/gsim/labeler.hpp"
#include "aograsp/heatmap/heatmap.hpp"
#include "aograsp/learn/checkpoint.hpp"
#include "aograsp/pipeline/commands.hpp"
#include "aograsp/propose/propose.hpp"
#include "json.hpp"

namespace aograsp::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void check_network(const learn::NetworkConfig& checkpoint, const learn::NetworkConfig& expected,
                   const std::string& what) {
  if (checkpoint == expected) return;
  throw Error("network configuration mismatch: checkpoint has " + learn::network_config_to_json(checkpoint) + " but " +
              what + " has " + learn::network_config_to_json(expected));
}

}  // namespace

std::string propose_cloud(const fs::path& checkpoint, const fs::path& cloud_path, const ProposeOptions& opts,
                          const fs::path& out_jsonl, const std::optional<fs::path>& ply, Warnings* warnings) {
  const auto ckpt = learn::read_checkpoint(checkpoint);
  if (opts.expected_network) check_network(ckpt.config, *opts.expected_network, "the configuration");
  const auto net = ckpt.network();
  const auto cloud = geom::read_aopc(cloud_path);
  if (!cloud.has_normals() || !cloud.has_curvature())
    throw Error("propose: " + cloud_path.string() + " lacks the normals and curvature the checkpoint's encoder needs");
  const auto scores = learn::predict_scores(cloud, net);

  std::vector<Eigen::Matrix3d> rotations;
  propose::OrientationSource source = propose::OrientationSource::geometric_fallback;
  if (opts.table) {
    rotations = propose::assign_orientations(cloud, propose::load_table(*opts.table));
    source = propose::OrientationSource::provider;
  } else {
    rotations = propose::geometric_fallback_orientations(cloud, opts.orientation_neighbors);
  }
  const auto props = propose::top_k_proposals(cloud, scores, rotations, source, {opts.k, opts.min_separation}, warnings);
  const std::string text = propose::proposals_to_jsonl(props);
  write_if_changed(out_jsonl, text);
  if (ply) heatmap::write_heat_ply(*ply, cloud, scores);
  return text;
}

const char* to_string(ScoreMode m) {
  switch (m) {
    case ScoreMode::model: return "model";
    case ScoreMode::random: return "random";
    case ScoreMode::oracle: return "oracle";
  }
  return "?";
}

ScoreMode parse_score_mode(const std::string& text) {
  if (text == "model") return ScoreMode::model;
  if (text == "random") return ScoreMode::random;
  if (text == "oracle") return ScoreMode::oracle;
  throw Error("unknown score mode '" + text + "' (expected model, random or oracle)");
}

namespace {

std::vector<double> edges(double lo, double hi, std::size_t bins) {
  std::vector<double> e(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) e[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  return e;
}

std::size_t bin_of(double x, const std::vector<double>& e) {
  const std::size_t bins = e.size() - 1;
  const double lo = e.front(), hi = e.back();
  if (!(hi > lo)) return 0;
  const double f = std::floor((x - lo) / (hi - lo) * static_cast<double>(bins));
  return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(bins - 1)));
}

void add(BinStats& b, double rate) {
  b.mean_rate = (b.mean_rate * static_cast<double>(b.count) + rate) / static_cast<double>(b.count + 1);
  ++b.count;
}

json bin_json(const BinStats& b) { return {{"count", b.count}, {"mean_rate", b.mean_rate}}; }

}  // namespace

EvalReport evaluate(const fs::path& manifest_path, const EvaluateOptions& opts) {
  const DatasetManifest m = load_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  const PipelineConfig cfg = parse_config(m.config);
  const std::size_t threads = resolve_thread_count(opts.threads);
  if (opts.split != "train" && opts.split != "test" && opts.split != "all")
    throw Error("evaluate: split must be train, test or all");

  EvalReport report;
  report.mode = to_string(opts.mode);
  report.split = opts.split;
  report.k = opts.k.value_or(cfg.evaluate.k);
  if (report.k == 0) throw Error("evaluate: k must be >= 1");

  std::optional<learn::ScorerNetwork> net;
  if (opts.mode == ScoreMode::model) {
    if (!opts.checkpoint) throw Error("evaluate: model mode needs a checkpoint");
    const auto ckpt = learn::read_checkpoint(*opts.checkpoint);
    check_network(ckpt.config, cfg.network, "the manifest configuration");
    net = ckpt.network();
  }

  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < m.records.size(); ++k) {
    const auto& r = m.records[k];
    if (opts.split == "all" || r.split == opts.split) picked.push_back(k);
  }
  std::map<std::string, artobj::ArticulatedObject> objects;
  for (std::size_t k : picked) {
    const auto& inst = m.instance(m.records[k].instance);
    if (!objects.count(inst.id) && m.records[k].ok()) objects.emplace(inst.id, artobj::load_object(dir / inst.object));
  }

  struct Outcome {
    std::optional<CloudResult> result;
    std::vector<std::string> labels;
    std::string error;
  };
  std::vector<Outcome> outcomes(picked.size());
  parallel_for(picked.size(), threads, [&](std::size_t p) {
    const std::size_t k = picked[p];
    const auto& rec = m.records[k];
    Outcome& out = outcomes[p];
    try {
      if (!rec.ok()) throw Error("record failed during generation: " + rec.error);
      const auto cloud = geom::read_aopc(dir / rec.cloud);
      std::vector<double> scores;
      switch (opts.mode) {
        case ScoreMode::model:
          scores = learn::predict_scores(cloud, *net);
          break;
        case ScoreMode::random: {
          Rng rng(derive_seed(cfg.evaluate.seed, k));
          for (std::size_t i = 0; i < cloud.size(); ++i) scores.push_back(rng.uniform());
          break;
        }
        case ScoreMode::oracle:
          if (rec.heatmap.empty()) throw Error("no heatmap; run densify first");
          scores = heatmap::read_aohm(dir / rec.heatmap);
          break;
      }
      const auto rotations = propose::geometric_fallback_orientations(cloud, cfg.evaluate.orientation_neighbors);
      const auto props = propose::top_k_proposals(cloud, scores, rotations,
                                                  propose::OrientationSource::geometric_fallback, {report.k, 0.0});
      std::vector<sampler::Grasp> grasps;
      for (const auto& pr : props) grasps.push_back(pr.grasp);
      const auto results =
          gsim::run_episodes(objects.at(rec.instance), rec.view.state, grasps, cfg.gripper, cfg.episode, 1);
      CloudResult cr;
      cr.record = rec.id;
      cr.instance = rec.instance;
      cr.closed = rec.closed();
      cr.distance = rec.view.distance;
      cr.yaw_deg = rec.view.yaw_deg;
      cr.evaluated = results.size();
      for (const auto& res : results) {
        const bool ok = res.success();
        cr.successes += ok;
        out.labels.push_back(ok ? std::string("success") : std::string(gsim::to_string(*res.failure_reason)));
      }
      cr.rate = cr.evaluated ? static_cast<double>(cr.successes) / static_cast<double>(cr.evaluated) : 0.0;
      out.result = cr;
    } catch (const std::exception& e) {
      out.error = rec.id + ": " + e.what();
    }
  });

  const auto& vr = cfg.dataset.viewpoints;
  report.distance_edges = edges(vr.distance_min, vr.distance_max, cfg.evaluate.distance_bins);
  report.yaw_edges = edges(-vr.yaw_span_deg / 2, vr.yaw_span_deg / 2, cfg.evaluate.yaw_bins);
  report.bins.assign(cfg.evaluate.distance_bins, std::vector<BinStats>(cfg.evaluate.yaw_bins));
  for (const char* name : {"success", "spawn_collision", "no_contact_on_close", "wrong_link", "slip_during_motion",
                           "insufficient_displacement"})
    report.outcomes[name] = 0;
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (!o.result) {
      ++report.excluded;
      report.errors.push_back(o.error);
      continue;
    }
    const auto& cr = *o.result;
    total += cr.rate;
    add(cr.closed ? report.closed : report.open, cr.rate);
    add(report.bins[bin_of(cr.distance, report.distance_edges)][bin_of(cr.yaw_deg, report.yaw_edges)], cr.rate);
    for (const auto& l : o.labels) ++report.outcomes[l];
    report.clouds.push_back(cr);
  }
  if (!report.clouds.empty()) report.mean_rate = total / static_cast<double>(report.clouds.size());
  return report;
}

std::string report_to_json(const EvalReport& r) {
  json j;
  j["note"] = "Success rates come from the toolkit's kinematic grasp simulator; they are internal metrics and are not "
              "comparable to physics-engine or real-robot success rates.";
  j["mode"] = r.mode;
  j["split"] = r.split;
  j["k"] = r.k;
  j["clouds_evaluated"] = r.clouds.size();
  j["excluded"] = r.excluded;
  j["mean_rate"] = r.mean_rate;
  j["closed"] = bin_json(r.closed);
  j["open"] = bin_json(r.open);
  json cells = json::array();
  for (const auto& row : r.bins) {
    json jr = json::array();
    for (const auto& b : row) jr.push_back(bin_json(b));
    cells.push_back(jr);
  }
  j["viewpoint_bins"] = {{"distance_edges", r.distance_edges}, {"yaw_edges_deg", r.yaw_edges}, {"cells", cells}};
  json outcomes = json::object();
  for (const auto& [k, v] : r.outcomes) outcomes[k] = v;
  j["outcomes"] = outcomes;
  j["errors"] = r.errors;
  json clouds = json::array();
  for (const auto& c : r.clouds)
    clouds.push_back({{"record", c.record},
                      {"instance", c.instance},
                      {"closed", c.closed},
                      {"distance", c.distance},
                      {"yaw_deg", c.yaw_deg},
                      {"evaluated", c.evaluated},
                      {"successes", c.successes},
                      {"rate", c.rate}});
  j["clouds"] = clouds;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& r) {
  std::string out = "record,instance,state,distance,yaw_deg,evaluated,successes,rate\n";
  char buf[256];
  for (const auto& c : r.clouds) {
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%.17g,%.17g,%zu,%zu,%.17g\n", c.record.c_str(), c.instance.c_str(),
                  c.closed ? "closed" : "open", c.distance, c.yaw_deg, c.evaluated, c.successes, c.rate);
    out += buf;
  }
  return out;
}

std::string inspect_manifest(const fs::path& manifest_path) {
  const DatasetManifest m = load_manifest(manifest_path);
  std::map<std::string, std::size_t> by_split, failed_by_split, successes, candidates, heatmaps;
  for (const auto& r : m.records) {
    ++by_split[r.split];
    if (!r.ok()) ++failed_by_split[r.split];
    successes[r.split] += r.successes;
    candidates[r.split] += r.candidates;
    heatmaps[r.split] += !r.heatmap.empty();
  }
  std::size_t matches = 0;
  for (const auto& c : m.correspondences) matches += c.count;
  std::ostringstream out;
  out << "toolkit version: " << m.version << "\n";
  out << "instances: " << m.instances.size() << "\n";
  for (const auto& i : m.instances) out << "  " << i.id << " (" << i.split << ", joint " << i.joint << ")\n";
  out << "records: " << m.records.size() << "\n";
  for (const auto& [split, n] : by_split) {
    const double rate = candidates[split] ? static_cast<double>(successes[split]) / static_cast<double>(candidates[split]) : 0.0;
    out << "  " << split << ": " << n << " records, " << failed_by_split[split] << " failed, " << heatmaps[split]
        << " with heatmaps, " << successes[split] << "/" << candidates[split] << " successful candidates ("
        << rate * 100.0 << "%)\n";
  }
  out << "correspondence pairs: " << m.correspondences.size() << " (" << matches << " matches)\n";
  return out.str();
}

}  // namespace aograsp::pipeline
