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


#include "aograsp/pipeline/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "json.hpp"

namespace aograsp::pipeline {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Degrees for the snapshot, rounded so 30 degrees prints as 30.
double to_deg(double radians) { return std::round(radians / kDeg * 1e9) / 1e9; }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& section) {
  if (!j.is_object()) throw Error("config: section '" + section + "' must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) throw Error("config: unknown key '" + key + "' in section '" + section + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_deg(const json& j, const char* key, double& radians) {
  if (j.contains(key)) radians = j.at(key).get<double>() * kDeg;
}

template <typename T>
T parse_enum(const json& j, const char* key, std::optional<T> (*parse)(std::string_view), T fallback) {
  if (!j.contains(key)) return fallback;
  const auto text = j.at(key).get<std::string>();
  const auto v = parse(text);
  if (!v) throw Error(std::string("config: bad value '") + text + "' for '" + key + "'");
  return *v;
}

ObjectSpec parse_object(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, {"id", "split", "path", "procedural"}, "dataset.objects[]");
  ObjectSpec spec;
  spec.id = j.at("id").get<std::string>();
  read(j, "split", spec.split);
  if (j.contains("path")) {
    std::filesystem::path p = j.at("path").get<std::string>();
    spec.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (j.contains("procedural")) {
    const auto& pj = j.at("procedural");
    check_keys(pj, {"kind", "seed", "size", "handle_radius", "hinge", "handle"}, "procedural");
    spec.kind = parse_enum(pj, "kind", &artobj::parse_procedural_kind, spec.kind);
    read(pj, "seed", spec.seed);
    read(pj, "size", spec.params.size);
    read(pj, "handle_radius", spec.params.handle_radius);
    spec.params.hinge = parse_enum(pj, "hinge", &artobj::parse_hinge_side, spec.params.hinge);
    spec.params.handle = parse_enum(pj, "handle", &artobj::parse_handle_kind, spec.params.handle);
  } else if (!spec.path) {
    throw Error("config: object '" + spec.id + "' needs either 'path' or 'procedural'");
  }
  return spec;
}

}  // namespace

void PipelineConfig::validate() const {
  const auto& d = dataset;
  std::set<std::string> ids;
  for (const auto& o : d.objects) {
    if (o.id.empty()) throw Error("config: object ids must be non-empty");
    if (o.id.find_first_of("/\\ ") != std::string::npos) throw Error("config: object id '" + o.id + "' has path characters");
    if (!ids.insert(o.id).second) throw Error("config: duplicate object id '" + o.id + "'");
    if (o.split != "train" && o.split != "test") throw Error("config: split must be 'train' or 'test' for " + o.id);
  }
  if (d.viewpoints_per_state == 0) throw Error("config: viewpoints_per_state must be >= 1");
  if (!(d.viewpoints.distance_min > 0.0) || d.viewpoints.distance_max < d.viewpoints.distance_min)
    throw Error("config: bad viewpoint distance range");
  if (d.render.max_points == 0) throw Error("config: render.max_points must be >= 1");
  if (!(d.correspondence_eps > 0.0)) throw Error("config: correspondence_eps must be positive");
  sampler.validate();
  gripper.validate();
  episode.validate();
  heatmap.validate();
  network.validate();
  train.finetune.validate();
  if (evaluate.k == 0 || evaluate.distance_bins == 0 || evaluate.yaw_bins == 0)
    throw Error("config: evaluate.k and bin counts must be >= 1");
}

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  try {
    const json root = json::parse(text);
    check_keys(root, {"version", "dataset", "sampler", "gripper", "episode", "heatmap", "network", "train", "evaluate"},
               "root");
    if (root.contains("dataset")) {
      const auto& j = root.at("dataset");
      check_keys(j, {"objects", "open_states", "viewpoints_per_state", "candidates_per_cloud", "viewpoints", "render",
                     "correspondence_eps", "seed"},
                 "dataset");
      auto& d = cfg.dataset;
      if (j.contains("objects"))
        for (const auto& o : j.at("objects")) d.objects.push_back(parse_object(o, base_dir));
      read(j, "open_states", d.open_states);
      read(j, "viewpoints_per_state", d.viewpoints_per_state);
      read(j, "candidates_per_cloud", d.candidates_per_cloud);
      read(j, "correspondence_eps", d.correspondence_eps);
      read(j, "seed", d.seed);
      if (j.contains("viewpoints")) {
        const auto& v = j.at("viewpoints");
        check_keys(v, {"yaw_span_deg", "pitch_span_deg", "distance_min", "distance_max", "width", "height", "vfov_deg"},
                   "dataset.viewpoints");
        read(v, "yaw_span_deg", d.viewpoints.yaw_span_deg);
        read(v, "pitch_span_deg", d.viewpoints.pitch_span_deg);
        read(v, "distance_min", d.viewpoints.distance_min);
        read(v, "distance_max", d.viewpoints.distance_max);
        read(v, "width", d.viewpoints.width);
        read(v, "height", d.viewpoints.height);
        read(v, "vfov_deg", d.viewpoints.vfov_deg);
      }
      if (j.contains("render")) {
        const auto& r = j.at("render");
        check_keys(r, {"max_points", "normal_neighbors", "depth_noise_sigma"}, "dataset.render");
        read(r, "max_points", d.render.max_points);
        read(r, "normal_neighbors", d.render.normal_neighbors);
        read(r, "depth_noise_sigma", d.render.depth_noise_sigma);
      }
    }
    if (root.contains("sampler")) {
      const auto& j = root.at("sampler");
      check_keys(j, {"omega", "tau", "semantic_fraction", "cone_half_angle_deg", "standoff_min", "standoff_max",
                     "semantic_perturbation_deg"},
                 "sampler");
      auto& s = cfg.sampler;
      read(j, "omega", s.omega);
      read(j, "tau", s.tau);
      read(j, "semantic_fraction", s.semantic_fraction);
      read_deg(j, "cone_half_angle_deg", s.cone_half_angle);
      read(j, "standoff_min", s.standoff_min);
      read(j, "standoff_max", s.standoff_max);
      read_deg(j, "semantic_perturbation_deg", s.semantic_perturbation);
    }
    if (root.contains("gripper")) {
      const auto& j = root.at("gripper");
      check_keys(j, {"max_opening", "finger_thickness", "finger_width", "finger_z_min", "finger_z_max", "palm_depth",
                     "stroke_resolution", "bisection_tolerance", "friction_half_angle_deg"},
                 "gripper");
      auto& g = cfg.gripper;
      read(j, "max_opening", g.max_opening);
      read(j, "finger_thickness", g.finger_thickness);
      read(j, "finger_width", g.finger_width);
      read(j, "finger_z_min", g.finger_z_min);
      read(j, "finger_z_max", g.finger_z_max);
      read(j, "palm_depth", g.palm_depth);
      read(j, "stroke_resolution", g.stroke_resolution);
      read(j, "bisection_tolerance", g.bisection_tolerance);
      read_deg(j, "friction_half_angle_deg", g.friction_half_angle);
    }
    if (root.contains("episode")) {
      const auto& j = root.at("episode");
      check_keys(j, {"steps", "revolute_step_deg", "prismatic_step", "revolute_success_deg", "prismatic_success",
                     "contact_tolerance"},
                 "episode");
      auto& e = cfg.episode;
      read(j, "steps", e.steps);
      read_deg(j, "revolute_step_deg", e.revolute_step);
      read(j, "prismatic_step", e.prismatic_step);
      read_deg(j, "revolute_success_deg", e.revolute_success);
      read(j, "prismatic_success", e.prismatic_success);
      read(j, "contact_tolerance", e.contact_tolerance);
    }
    if (root.contains("heatmap")) {
      const auto& j = root.at("heatmap");
      check_keys(j, {"k", "r", "lambda_pos", "lambda_neg"}, "heatmap");
      read(j, "k", cfg.heatmap.k);
      read(j, "r", cfg.heatmap.r);
      read(j, "lambda_pos", cfg.heatmap.lambda_pos);
      read(j, "lambda_neg", cfg.heatmap.lambda_neg);
    }
    if (root.contains("network")) {
      check_keys(root.at("network"), {"encoder", "head"}, "network");
      if (root.at("network").contains("encoder"))
        check_keys(root.at("network").at("encoder"), {"radii", "nsamples", "widths", "feature_dim"}, "network.encoder");
      if (root.at("network").contains("head")) check_keys(root.at("network").at("head"), {"hidden"}, "network.head");
      cfg.network = learn::network_config_from_json(root.at("network").dump());
    }
    if (root.contains("train")) {
      const auto& j = root.at("train");
      check_keys(j, {"pretrain", "pretrain_epochs", "sparse_labels", "seed", "precision", "optimizer", "weights",
                     "contrastive"},
                 "train");
      auto& t = cfg.train;
      read(j, "pretrain", t.pretrain);
      read(j, "pretrain_epochs", t.pretrain_epochs);
      read(j, "sparse_labels", t.sparse_labels);
      read(j, "seed", t.seed);
      if (j.contains("precision")) t.finetune.precision = learn::parse_precision(j.at("precision").get<std::string>());
      if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        check_keys(o, {"learning_rate", "weight_decay", "gamma", "step_size", "batch_size", "epochs", "beta1", "beta2",
                       "epsilon"},
                   "train.optimizer");
        auto& oc = t.finetune.optimizer;
        read(o, "learning_rate", oc.learning_rate);
        read(o, "weight_decay", oc.weight_decay);
        read(o, "gamma", oc.gamma);
        read(o, "step_size", oc.step_size);
        read(o, "batch_size", oc.batch_size);
        read(o, "epochs", oc.epochs);
        read(o, "beta1", oc.beta1);
        read(o, "beta2", oc.beta2);
        read(o, "epsilon", oc.epsilon);
      }
      if (j.contains("weights")) {
        const auto& w = j.at("weights");
        check_keys(w, {"hc", "mse"}, "train.weights");
        read(w, "hc", t.finetune.weights.hc);
        read(w, "mse", t.finetune.weights.mse);
      }
      if (j.contains("contrastive")) {
        const auto& c = j.at("contrastive");
        check_keys(c, {"pairs", "negatives", "m_p", "m_n", "eps_corr"}, "train.contrastive");
        auto& cc = t.finetune.contrastive;
        read(c, "pairs", cc.pairs);
        read(c, "negatives", cc.negatives);
        read(c, "m_p", cc.m_p);
        read(c, "m_n", cc.m_n);
        read(c, "eps_corr", cc.eps_corr);
      }
    }
    if (root.contains("evaluate")) {
      const auto& j = root.at("evaluate");
      check_keys(j, {"k", "distance_bins", "yaw_bins", "orientation_neighbors", "seed"}, "evaluate");
      read(j, "k", cfg.evaluate.k);
      read(j, "distance_bins", cfg.evaluate.distance_bins);
      read(j, "yaw_bins", cfg.evaluate.yaw_bins);
      read(j, "orientation_neighbors", cfg.evaluate.orientation_neighbors);
      read(j, "seed", cfg.evaluate.seed);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path), path.parent_path());
}

std::string config_to_json(const PipelineConfig& cfg) {
  json root;
  root["version"] = kToolkitVersion;
  {
    const auto& d = cfg.dataset;
    json j;
    json objects = json::array();
    for (const auto& o : d.objects) {
      json oj;
      oj["id"] = o.id;
      oj["split"] = o.split;
      if (o.path) {
        oj["path"] = o.path->generic_string();
      } else {
        oj["procedural"] = {{"kind", std::string(artobj::to_string(o.kind))},
                            {"seed", o.seed},
                            {"size", o.params.size},
                            {"handle_radius", o.params.handle_radius},
                            {"hinge", std::string(artobj::to_string(o.params.hinge))},
                            {"handle", std::string(artobj::to_string(o.params.handle))}};
      }
      objects.push_back(oj);
    }
    j["objects"] = objects;
    j["open_states"] = d.open_states;
    j["viewpoints_per_state"] = d.viewpoints_per_state;
    j["candidates_per_cloud"] = d.candidates_per_cloud;
    j["viewpoints"] = {{"yaw_span_deg", d.viewpoints.yaw_span_deg},     {"pitch_span_deg", d.viewpoints.pitch_span_deg},
                       {"distance_min", d.viewpoints.distance_min},     {"distance_max", d.viewpoints.distance_max},
                       {"width", d.viewpoints.width},                   {"height", d.viewpoints.height},
                       {"vfov_deg", d.viewpoints.vfov_deg}};
    j["render"] = {{"max_points", d.render.max_points},
                   {"normal_neighbors", d.render.normal_neighbors},
                   {"depth_noise_sigma", d.render.depth_noise_sigma}};
    j["correspondence_eps"] = d.correspondence_eps;
    j["seed"] = d.seed;
    root["dataset"] = j;
  }
  const auto& s = cfg.sampler;
  root["sampler"] = {{"omega", s.omega},
                     {"tau", s.tau},
                     {"semantic_fraction", s.semantic_fraction},
                     {"cone_half_angle_deg", to_deg(s.cone_half_angle)},
                     {"standoff_min", s.standoff_min},
                     {"standoff_max", s.standoff_max},
                     {"semantic_perturbation_deg", to_deg(s.semantic_perturbation)}};
  const auto& g = cfg.gripper;
  root["gripper"] = {{"max_opening", g.max_opening},
                     {"finger_thickness", g.finger_thickness},
                     {"finger_width", g.finger_width},
                     {"finger_z_min", g.finger_z_min},
                     {"finger_z_max", g.finger_z_max},
                     {"palm_depth", g.palm_depth},
                     {"stroke_resolution", g.stroke_resolution},
                     {"bisection_tolerance", g.bisection_tolerance},
                     {"friction_half_angle_deg", to_deg(g.friction_half_angle)}};
  const auto& e = cfg.episode;
  root["episode"] = {{"steps", e.steps},
                     {"revolute_step_deg", to_deg(e.revolute_step)},
                     {"prismatic_step", e.prismatic_step},
                     {"revolute_success_deg", to_deg(e.revolute_success)},
                     {"prismatic_success", e.prismatic_success},
                     {"contact_tolerance", e.contact_tolerance}};
  root["heatmap"] = {{"k", cfg.heatmap.k},
                     {"r", cfg.heatmap.r},
                     {"lambda_pos", cfg.heatmap.lambda_pos},
                     {"lambda_neg", cfg.heatmap.lambda_neg}};
  root["network"] = json::parse(learn::network_config_to_json(cfg.network));
  {
    const auto& t = cfg.train;
    const auto& o = t.finetune.optimizer;
    const auto& c = t.finetune.contrastive;
    json j;
    j["pretrain"] = t.pretrain;
    j["pretrain_epochs"] = t.pretrain_epochs;
    j["sparse_labels"] = t.sparse_labels;
    j["seed"] = t.seed;
    j["precision"] = learn::to_string(t.finetune.precision);
    j["optimizer"] = {{"learning_rate", o.learning_rate}, {"weight_decay", o.weight_decay}, {"gamma", o.gamma},
                      {"step_size", o.step_size},         {"batch_size", o.batch_size},     {"epochs", o.epochs},
                      {"beta1", o.beta1},                 {"beta2", o.beta2},               {"epsilon", o.epsilon}};
    j["weights"] = {{"hc", t.finetune.weights.hc}, {"mse", t.finetune.weights.mse}};
    j["contrastive"] = {{"pairs", c.pairs}, {"negatives", c.negatives}, {"m_p", c.m_p}, {"m_n", c.m_n}, {"eps_corr", c.eps_corr}};
    root["train"] = j;
  }
  root["evaluate"] = {{"k", cfg.evaluate.k},
                      {"distance_bins", cfg.evaluate.distance_bins},
                      {"yaw_bins", cfg.evaluate.yaw_bins},
                      {"orientation_neighbors", cfg.evaluate.orientation_neighbors},
                      {"seed", cfg.evaluate.seed}};
  return root.dump(2);
}

}  // namespace aograsp::pipeline
