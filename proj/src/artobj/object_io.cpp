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

#include "aograsp/artobj/object_io.hpp"

#include <cmath>

#include "json.hpp"

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"

namespace aograsp::artobj {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error("object schema error at " + path + ": " + what);
}

const json& member(const json& node, const char* key, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  const auto it = node.find(key);
  if (it == node.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::string as_string(const json& node, const std::string& path) {
  if (!node.is_string()) fail(path, "expected a string");
  return node.get<std::string>();
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

const json& as_array(const json& node, const std::string& path) {
  if (!node.is_array()) fail(path, "expected an array");
  return node;
}

Vector3 as_vec3(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 3) fail(path, "expected [x, y, z]");
  return {as_number(node[0], path + "[0]"), as_number(node[1], path + "[1]"),
          as_number(node[2], path + "[2]")};
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Link parse_link(const json& node, const std::string& path) {
  Link link;
  link.name = as_string(member(node, "name", path), path + ".name");
  const std::string tag = as_string(member(node, "tag", path), path + ".tag");
  const auto parsed = parse_tag(tag);
  if (!parsed) fail(path + ".tag", "unknown tag '" + tag + "'");
  link.tag = *parsed;
  const std::string vpath = path + ".vertices";
  for (std::size_t i = 0; const auto& v : as_array(member(node, "vertices", path), vpath)) {
    link.vertices.push_back(as_vec3(v, at(vpath, i++)));
  }
  const std::string tpath = path + ".triangles";
  for (std::size_t i = 0; const auto& t : as_array(member(node, "triangles", path), tpath)) {
    const std::string p = at(tpath, i++);
    if (!t.is_array() || t.size() != 3) fail(p, "expected [i, j, k]");
    Triangle tri;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!t[k].is_number_integer() || t[k].get<long long>() < 0) fail(at(p, k), "expected a vertex index");
      const auto idx = t[k].get<long long>();
      if (static_cast<std::size_t>(idx) >= link.vertices.size()) fail(at(p, k), "vertex index out of range");
      tri[k] = static_cast<std::uint32_t>(idx);
    }
    link.triangles.push_back(tri);
  }
  if (link.triangles.empty()) fail(tpath, "mesh must not be empty");
  return link;
}

Joint parse_joint(const json& node, const std::string& path, std::vector<std::string>* warnings) {
  Joint joint;
  joint.name = as_string(member(node, "name", path), path + ".name");
  const std::string type = as_string(member(node, "type", path), path + ".type");
  const auto parsed = parse_joint_type(type);
  if (!parsed) fail(path + ".type", "unknown joint type '" + type + "'");
  joint.type = *parsed;
  joint.parent = as_string(member(node, "parent", path), path + ".parent");
  joint.child = as_string(member(node, "child", path), path + ".child");

  joint.axis = as_vec3(member(node, "axis", path), path + ".axis");
  const double norm = joint.axis.norm();
  if (std::abs(norm - 1.0) > 1e-3) fail(path + ".axis", "axis is not unit length");
  if (std::abs(norm - 1.0) > 1e-12) {
    joint.axis /= norm;
    if (warnings) warnings->push_back(path + ".axis: normalized axis of length " + std::to_string(norm));
  }
  joint.origin = as_vec3(member(node, "origin", path), path + ".origin");

  if (joint.type == JointType::fixed) {
    if (node.contains("limits")) {
      const auto& limits = node["limits"];
      if (!limits.is_array() || limits.size() != 2) fail(path + ".limits", "expected [lower, upper]");
    }
    return joint;
  }
  const json& limits = member(node, "limits", path);
  if (!limits.is_array() || limits.size() != 2) fail(path + ".limits", "expected [lower, upper]");
  joint.lower = as_number(limits[0], path + ".limits[0]");
  joint.upper = as_number(limits[1], path + ".limits[1]");
  if (joint.lower > joint.upper) fail(path + ".limits", "lower limit exceeds upper limit");
  joint.closed_value = as_number(member(node, "closed_value", path), path + ".closed_value");
  if (joint.closed_value < joint.lower || joint.closed_value > joint.upper) {
    fail(path + ".closed_value", "closed value outside limits");
  }
  return joint;
}

}  // namespace

ArticulatedObject parse_object(std::string_view text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(std::string("object document is not valid JSON: ") + e.what());
  }
  const std::string root = "$";
  const std::string name = as_string(member(doc, "name", root), "$.name");

  std::vector<Link> links;
  for (std::size_t i = 0; const auto& l : as_array(member(doc, "links", root), "$.links")) {
    links.push_back(parse_link(l, at("$.links", i++)));
  }
  std::vector<Joint> joints;
  if (doc.contains("joints")) {
    for (std::size_t i = 0; const auto& j : as_array(doc["joints"], "$.joints")) {
      joints.push_back(parse_joint(j, at("$.joints", i++), warnings));
    }
  }
  return ArticulatedObject(name, std::move(links), std::move(joints));
}

std::string serialize_object(const ArticulatedObject& obj) {
  auto vec = [](const Vector3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); };
  ordered_json doc;
  doc["name"] = obj.name();
  doc["links"] = ordered_json::array();
  for (const auto& link : obj.links()) {
    ordered_json l;
    l["name"] = link.name;
    l["tag"] = std::string(to_string(link.tag));
    l["vertices"] = ordered_json::array();
    for (const auto& v : link.vertices) l["vertices"].push_back(vec(v));
    l["triangles"] = ordered_json::array();
    for (const auto& t : link.triangles) l["triangles"].push_back({t[0], t[1], t[2]});
    doc["links"].push_back(std::move(l));
  }
  doc["joints"] = ordered_json::array();
  for (const auto& joint : obj.joints()) {
    ordered_json j;
    j["name"] = joint.name;
    j["type"] = std::string(to_string(joint.type));
    j["parent"] = joint.parent;
    j["child"] = joint.child;
    j["axis"] = vec(joint.axis);
    j["origin"] = vec(joint.origin);
    j["limits"] = {joint.lower, joint.upper};
    j["closed_value"] = joint.closed_value;
    doc["joints"].push_back(std::move(j));
  }
  return doc.dump() + "\n";
}

ArticulatedObject load_object(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  const std::string text = io::read_file(path);
  try {
    return parse_object(text, warnings);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void save_object(const std::filesystem::path& path, const ArticulatedObject& obj) {
  io::write_file_atomic(path, serialize_object(obj));
}

}  // namespace aograsp::artobj
