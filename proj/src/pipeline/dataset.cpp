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


#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "aograsp/artobj/kinematics.hpp"
#include "aograsp/artobj/object_io.hpp"
#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/geom/cloud_io.hpp"
#include "aograsp/gsim/labeler.hpp"
#include "aograsp/heatmap/heatmap.hpp"
#include "aograsp/pipeline/commands.hpp"
#include "aograsp/render/correspondences.hpp"
#include "aograsp/sampler/grasp.hpp"

namespace aograsp::pipeline {

namespace fs = std::filesystem;

namespace {

std::string record_id(const std::string& instance, std::size_t state, std::size_t view) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_s%02zu_v%02zu", state, view);
  return instance + buf;
}

template <typename Fn>
std::string to_bytes(Fn&& write) {
  std::ostringstream out(std::ios::binary);
  write(out);
  return out.str();
}

artobj::ArticulatedObject build_object(const ObjectSpec& spec) {
  if (spec.path) return artobj::load_object(*spec.path);
  return artobj::generate_procedural(spec.kind, spec.params, spec.seed);
}

struct Job {
  std::size_t object = 0;
  std::size_t state = 0;
  std::size_t view = 0;
};

struct InstanceData {
  std::optional<artobj::ArticulatedObject> object;
  std::size_t joint = 0;
  std::string error;
  std::vector<artobj::JointState> states;
  std::vector<std::vector<render::ViewpointSample>> views;  // per state
};

bool files_present(const fs::path& dir, const ManifestRecord& r) {
  if (!r.ok()) return true;
  return fs::exists(dir / r.cloud) && fs::exists(dir / r.grasps);
}

}  // namespace

DatasetManifest gen_dataset(const PipelineConfig& cfg, const fs::path& out_dir, std::size_t threads,
                            Warnings* warnings) {
  cfg.validate();
  const auto& dc = cfg.dataset;
  if (dc.objects.empty()) throw Error("gen-dataset: the configuration lists no objects");
  threads = resolve_thread_count(threads);
  const std::string snapshot = config_to_json(cfg);
  const fs::path manifest_path = out_dir / "manifest.json";

  std::map<std::string, std::string> previous_heatmaps;
  if (fs::exists(manifest_path)) {
    const DatasetManifest old = manifest_from_json(io::read_file(manifest_path));
    if (old.config != snapshot)
      throw Error("gen-dataset: " + out_dir.string() + " holds a dataset generated with a different configuration");
    for (const auto& r : old.records)
      if (!r.heatmap.empty() && fs::exists(out_dir / r.heatmap)) previous_heatmaps[r.id] = r.heatmap;
  }
  for (const char* sub : {"objects", "clouds", "grasps", "corr", "records"}) fs::create_directories(out_dir / sub);

  DatasetManifest manifest;
  manifest.version = kToolkitVersion;
  manifest.config = snapshot;

  // Objects, states and cameras are cheap and fixed by the seed.
  std::vector<InstanceData> inst(dc.objects.size());
  for (std::size_t o = 0; o < dc.objects.size(); ++o) {
    const auto& spec = dc.objects[o];
    InstanceRecord ir{spec.id, spec.split, "objects/" + spec.id + ".json", ""};
    try {
      inst[o].object = build_object(spec);
      const auto& obj = *inst[o].object;
      const auto actuated = obj.actuated_joints();
      if (actuated.empty()) throw Error("object has no actuated joint");
      inst[o].joint = actuated.front();
      ir.joint = obj.joints()[inst[o].joint].name;
      write_if_changed(out_dir / ir.object, artobj::serialize_object(obj));
      inst[o].states = artobj::sample_states(obj, dc.open_states, derive_seed(dc.seed, 100 + o));
      for (std::size_t s = 0; s < inst[o].states.size(); ++s) {
        const auto target = render::bounding_box_center(obj, inst[o].states[s]);
        inst[o].views.push_back(render::sample_viewpoints(dc.viewpoints, target, dc.viewpoints_per_state,
                                                          derive_seed(derive_seed(dc.seed, 200 + o), s)));
      }
    } catch (const Error& e) {
      inst[o].error = e.what();
      inst[o].object.reset();
      if (warnings) warnings->push_back("object " + spec.id + ": " + e.what());
    }
    manifest.instances.push_back(ir);
  }

  std::vector<Job> jobs;
  for (std::size_t o = 0; o < dc.objects.size(); ++o) {
    const std::size_t states = inst[o].object ? inst[o].states.size() : 1 + dc.open_states;
    for (std::size_t s = 0; s < states; ++s)
      for (std::size_t v = 0; v < dc.viewpoints_per_state; ++v) jobs.push_back({o, s, v});
  }

  std::vector<ManifestRecord> records(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    const auto& spec = dc.objects[job.object];
    const auto& data = inst[job.object];
    const std::string id = record_id(spec.id, job.state, job.view);
    const fs::path sidecar = out_dir / "records" / (id + ".json");
    if (fs::exists(sidecar)) {
      try {
        ManifestRecord done = record_from_json(io::read_file(sidecar));
        if (done.id == id && files_present(out_dir, done)) {
          records[k] = std::move(done);
          return;
        }
      } catch (const Error&) {
        // Unreadable sidecar: regenerate the record.
      }
    }

    ManifestRecord rec;
    rec.id = id;
    rec.instance = spec.id;
    rec.split = spec.split;
    rec.state_id = job.state;
    rec.view_id = job.view;
    try {
      if (!data.object) throw Error("object unavailable: " + data.error);
      const auto& obj = *data.object;
      const auto& state = data.states[job.state];
      const auto& vp = data.views[job.state][job.view];
      rec.view.camera = vp.camera;
      rec.view.yaw_deg = vp.yaw_deg;
      rec.view.pitch_deg = vp.pitch_deg;
      rec.view.distance = vp.distance;
      rec.view.state_id = job.state;
      rec.view.state = state;

      const std::uint64_t job_seed = derive_seed(derive_seed(derive_seed(dc.seed, 300 + job.object), job.state), job.view);
      render::RenderOptions ropts = dc.render;
      ropts.threads = 1;
      ropts.noise_seed = derive_seed(job_seed, 1);
      const auto cloud = render::render_partial_cloud(obj, state, vp.camera, ropts).cloud;

      auto grasps = sampler::compose_candidates(cloud, obj, state, data.joint, dc.candidates_per_cloud, cfg.sampler,
                                                derive_seed(job_seed, 2));
      const auto results = gsim::run_episodes(obj, state, grasps, cfg.gripper, cfg.episode, 1);
      grasps = gsim::apply_labels(std::move(grasps), results);
      rec.candidates = grasps.size();
      for (const auto& g : grasps) rec.successes += g.label == sampler::GraspLabel::success;

      rec.cloud = "clouds/" + id + ".aopc";
      rec.grasps = "grasps/" + id + ".jsonl";
      write_if_changed(out_dir / rec.cloud, to_bytes([&](std::ostream& out) { geom::write_aopc(out, cloud); }));
      write_if_changed(out_dir / rec.grasps, sampler::grasps_to_jsonl(grasps));
    } catch (const std::exception& e) {
      rec.status = "failed";
      rec.error = e.what();
      rec.cloud.clear();
      rec.grasps.clear();
    }
    write_if_changed(sidecar, record_to_json(rec));
    records[k] = std::move(rec);
  });

  std::size_t failed = 0;
  for (auto& r : records) {
    failed += !r.ok();
    if (auto it = previous_heatmaps.find(r.id); it != previous_heatmaps.end() && r.ok()) r.heatmap = it->second;
    if (!r.ok() && warnings) warnings->push_back("record " + r.id + " failed: " + r.error);
  }
  if (failed == records.size())
    throw Error("gen-dataset: every record failed; first error: " + (records.empty() ? std::string("none") : records[0].error));

  // Ring of partner views within each (instance, state).
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < records.size(); ++k) index[records[k].id] = k;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t views = dc.viewpoints_per_state;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Job& job = jobs[k];
    if (views < 2 || (views == 2 && job.view == 1)) continue;
    const std::size_t next = (job.view + 1) % views;
    const std::size_t other = index.at(record_id(dc.objects[job.object].id, job.state, next));
    if (records[k].ok() && records[other].ok()) pairs.emplace_back(k, other);
  }
  std::vector<CorrespondenceRecord> corr(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto& a = records[pairs[p].first];
    const auto& b = records[pairs[p].second];
    CorrespondenceRecord c{a.id, b.id, "corr/" + a.id + "__" + b.id + ".aocr", 0};
    const auto ca = geom::read_aopc(out_dir / a.cloud);
    const auto cb = geom::read_aopc(out_dir / b.cloud);
    auto set = render::extract_correspondences(ca, cb, dc.correspondence_eps);
    set.state_id = static_cast<std::uint32_t>(a.state_id);
    c.count = set.pairs.size();
    write_if_changed(out_dir / c.path, to_bytes([&](std::ostream& out) { render::write_aocr(out, set); }));
    corr[p] = std::move(c);
  });
  for (const auto& c : corr) {
    records[index.at(c.a)].partners.push_back(c.b);
    records[index.at(c.b)].partners.push_back(c.a);
  }

  manifest.records = std::move(records);
  manifest.correspondences = std::move(corr);
  save_manifest(manifest_path, manifest);
  return manifest;
}

DatasetManifest densify_dataset(const fs::path& manifest_path, std::size_t threads,
                                const std::optional<heatmap::HeatmapConfig>& override_cfg, Warnings* warnings) {
  DatasetManifest m = load_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  const heatmap::HeatmapConfig hcfg = override_cfg ? *override_cfg : parse_config(m.config).heatmap;
  hcfg.validate();
  threads = resolve_thread_count(threads);
  fs::create_directories(dir / "heatmaps");

  std::vector<std::string> notes(m.records.size());
  parallel_for(m.records.size(), threads, [&](std::size_t k) {
    auto& rec = m.records[k];
    if (!rec.ok()) return;
    const auto cloud = geom::read_aopc(dir / rec.cloud);
    const auto grasps = sampler::load_grasps(dir / rec.grasps);
    const auto labels = heatmap::labels_from_grasps(cloud, grasps);
    std::vector<double> heat;
    if (labels.size() == 0) {
      heat.assign(cloud.size(), 0.0);
      notes[k] = "record " + rec.id + " has no labeled grasps; heatmap is all zeros";
    } else {
      heat = heatmap::densify(cloud, labels, hcfg, 1);
    }
    rec.heatmap = "heatmaps/" + rec.id + ".aohm";
    write_if_changed(dir / rec.heatmap, to_bytes([&](std::ostream& out) { heatmap::write_aohm(out, heat); }));
  });
  if (warnings)
    for (auto& n : notes)
      if (!n.empty()) warnings->push_back(std::move(n));
  save_manifest(manifest_path, m);
  return m;
}

}  // namespace aograsp::pipeline
