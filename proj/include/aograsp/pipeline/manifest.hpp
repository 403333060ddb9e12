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


#ifndef AOGRASP_PIPELINE_MANIFEST_HPP_
#define AOGRASP_PIPELINE_MANIFEST_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "aograsp/render/renderer.hpp"

namespace aograsp::pipeline {

struct InstanceRecord {
  std::string id;
  std::string split;
  std::string object;  // path of the object description, relative to the manifest
  std::string joint;   // actuated joint the sampler targets
};

// One rendered view of one joint state of one instance.
struct ManifestRecord {
  std::string id;
  std::string instance;
  std::string split;
  std::size_t state_id = 0;  // 0 is the closed state
  std::size_t view_id = 0;
  render::ViewRecord view;   // camera, yaw/pitch/distance and joint state
  std::string cloud;         // relative paths; empty when absent
  std::string grasps;
  std::string heatmap;
  std::vector<std::string> partners;
  std::string status = "ok";  // "ok" or "failed"
  std::string error;
  std::size_t candidates = 0;
  std::size_t successes = 0;

  bool ok() const { return status == "ok"; }
  bool closed() const { return state_id == 0; }
};

struct CorrespondenceRecord {
  std::string a;
  std::string b;
  std::string path;
  std::size_t count = 0;
};

struct DatasetManifest {
  std::string version;
  std::string config;  // snapshot of the generating configuration (JSON)
  std::vector<InstanceRecord> instances;
  std::vector<ManifestRecord> records;
  std::vector<CorrespondenceRecord> correspondences;

  const InstanceRecord& instance(const std::string& id) const;
  const ManifestRecord& record(const std::string& id) const;
  // Throws on duplicate or dangling ids.
  void validate() const;
};

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);

std::string record_to_json(const ManifestRecord& r);
ManifestRecord record_from_json(const std::string& text);

// Writes only when the bytes differ, so re-saving an unchanged manifest leaves
// the file untouched.
void save_manifest(const std::filesystem::path& path, const DatasetManifest& m);

// Loads and validates; every referenced file of an "ok" record must exist.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Same write-if-changed rule for any output file. Returns true if written.
bool write_if_changed(const std::filesystem::path& path, const std::string& bytes);

}  // namespace aograsp::pipeline

#endif  // AOGRASP_PIPELINE_MANIFEST_HPP_
