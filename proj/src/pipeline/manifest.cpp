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


#include "aograsp/pipeline/manifest.hpp"

#include <set>
#include <system_error>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "json.hpp"

namespace aograsp::pipeline {

using json = nlohmann::ordered_json;

namespace {

json record_json(const ManifestRecord& r) {
  json j;
  j["id"] = r.id;
  j["instance"] = r.instance;
  j["split"] = r.split;
  j["state_id"] = r.state_id;
  j["view_id"] = r.view_id;
  j["view"] = json::parse(render::view_to_json(r.view));
  j["cloud"] = r.cloud;
  j["grasps"] = r.grasps;
  j["heatmap"] = r.heatmap;
  j["partners"] = r.partners;
  j["status"] = r.status;
  j["error"] = r.error;
  j["candidates"] = r.candidates;
  j["successes"] = r.successes;
  return j;
}

ManifestRecord record_of(const json& j) {
  ManifestRecord r;
  r.id = j.at("id").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.split = j.at("split").get<std::string>();
  r.state_id = j.at("state_id").get<std::size_t>();
  r.view_id = j.at("view_id").get<std::size_t>();
  r.view = render::view_from_json(j.at("view").dump());
  r.cloud = j.at("cloud").get<std::string>();
  r.grasps = j.at("grasps").get<std::string>();
  r.heatmap = j.at("heatmap").get<std::string>();
  r.partners = j.at("partners").get<std::vector<std::string>>();
  r.status = j.at("status").get<std::string>();
  r.error = j.at("error").get<std::string>();
  r.candidates = j.at("candidates").get<std::size_t>();
  r.successes = j.at("successes").get<std::size_t>();
  return r;
}

}  // namespace

const InstanceRecord& DatasetManifest::instance(const std::string& id) const {
  for (const auto& i : instances)
    if (i.id == id) return i;
  throw Error("manifest: unknown instance '" + id + "'");
}

const ManifestRecord& DatasetManifest::record(const std::string& id) const {
  for (const auto& r : records)
    if (r.id == id) return r;
  throw Error("manifest: unknown record '" + id + "'");
}

void DatasetManifest::validate() const {
  std::set<std::string> inst, recs;
  for (const auto& i : instances)
    if (!inst.insert(i.id).second) throw Error("manifest: duplicate instance id '" + i.id + "'");
  for (const auto& r : records) {
    if (!recs.insert(r.id).second) throw Error("manifest: duplicate record id '" + r.id + "'");
    if (!inst.count(r.instance)) throw Error("manifest: record '" + r.id + "' names unknown instance '" + r.instance + "'");
    if (r.status != "ok" && r.status != "failed") throw Error("manifest: record '" + r.id + "' has bad status");
  }
  for (const auto& r : records)
    for (const auto& p : r.partners)
      if (!recs.count(p)) throw Error("manifest: record '" + r.id + "' names unknown partner '" + p + "'");
  for (const auto& c : correspondences)
    if (!recs.count(c.a) || !recs.count(c.b)) throw Error("manifest: correspondence names an unknown record");
}

std::string manifest_to_json(const DatasetManifest& m) {
  json j;
  j["version"] = m.version;
  j["config"] = m.config.empty() ? json::object() : json::parse(m.config);
  json inst = json::array();
  for (const auto& i : m.instances) inst.push_back({{"id", i.id}, {"split", i.split}, {"object", i.object}, {"joint", i.joint}});
  j["instances"] = inst;
  json recs = json::array();
  for (const auto& r : m.records) recs.push_back(record_json(r));
  j["records"] = recs;
  json corr = json::array();
  for (const auto& c : m.correspondences) corr.push_back({{"a", c.a}, {"b", c.b}, {"path", c.path}, {"count", c.count}});
  j["correspondences"] = corr;
  return j.dump(1) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
  DatasetManifest m;
  try {
    const json j = json::parse(text);
    m.version = j.at("version").get<std::string>();
    m.config = j.at("config").dump(2);
    for (const auto& i : j.at("instances"))
      m.instances.push_back({i.at("id").get<std::string>(), i.at("split").get<std::string>(),
                             i.at("object").get<std::string>(), i.at("joint").get<std::string>()});
    for (const auto& r : j.at("records")) m.records.push_back(record_of(r));
    for (const auto& c : j.at("correspondences"))
      m.correspondences.push_back({c.at("a").get<std::string>(), c.at("b").get<std::string>(),
                                   c.at("path").get<std::string>(), c.at("count").get<std::size_t>()});
  } catch (const json::exception& e) {
    throw Error(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

std::string record_to_json(const ManifestRecord& r) { return record_json(r).dump(); }

ManifestRecord record_from_json(const std::string& text) {
  try {
    return record_of(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(std::string("record: ") + e.what());
  }
}

bool write_if_changed(const std::filesystem::path& path, const std::string& bytes) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) == bytes.size()) {
    if (io::read_file(path) == bytes) return false;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  io::write_file_atomic(path, bytes);
  return true;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
  m.validate();
  write_if_changed(path, manifest_to_json(m));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  DatasetManifest m = manifest_from_json(io::read_file(path));
  const auto dir = path.parent_path();
  auto need = [&](const std::string& rel, const std::string& what) {
    if (!rel.empty() && !std::filesystem::exists(dir / rel))
      throw Error("manifest: missing " + what + " file " + (dir / rel).string());
  };
  for (const auto& i : m.instances) need(i.object, "object");
  for (const auto& r : m.records) {
    if (!r.ok()) continue;
    need(r.cloud, "cloud");
    need(r.grasps, "grasps");
    need(r.heatmap, "heatmap");
  }
  for (const auto& c : m.correspondences) need(c.path, "correspondence");
  return m;
}

}  // namespace aograsp::pipeline
