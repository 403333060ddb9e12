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

#include "aograsp/geom/cloud_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"

namespace aograsp::geom {

namespace {

void write_vec3(std::ostream& out, const std::vector<Vector3>& values) {
  for (const auto& v : values) {
    for (int a = 0; a < 3; ++a) io::write_le(out, static_cast<float>(v[a]));
  }
}

std::vector<Vector3> read_vec3(std::istream& in, std::size_t n) {
  std::vector<Vector3> values(n);
  for (auto& v : values) {
    for (int a = 0; a < 3; ++a) v[a] = io::read_le<float>(in);
  }
  return values;
}

}  // namespace

void write_aopc(std::ostream& out, const PointCloud& cloud) {
  cloud.validate();
  std::uint16_t mask = aopc::kPositions;
  if (cloud.has_normals()) mask |= aopc::kNormals;
  if (cloud.has_curvature()) mask |= aopc::kCurvature;
  if (cloud.has_link_id()) mask |= aopc::kLinkId;
  if (cloud.has_surface()) mask |= aopc::kSurface;
  if (cloud.frame == Frame::camera) mask |= aopc::kCameraFrame;

  io::write_magic(out, "AOPC");
  io::write_le(out, aopc::kVersion);
  io::write_le(out, static_cast<std::uint32_t>(cloud.size()));
  io::write_le(out, mask);
  write_vec3(out, cloud.points);
  write_vec3(out, cloud.normals);
  for (double c : cloud.curvature) io::write_le(out, static_cast<float>(c));
  for (std::int32_t id : cloud.link_id) io::write_le(out, std::bit_cast<std::uint32_t>(id));
  for (const auto& s : cloud.surface) {
    io::write_le(out, s.triangle);
    io::write_le(out, static_cast<float>(s.u));
    io::write_le(out, static_cast<float>(s.v));
  }
}

void write_aopc(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ostringstream buffer(std::ios::binary);
  write_aopc(buffer, cloud);
  io::write_file_atomic(path, buffer.str());
}

PointCloud read_aopc(std::istream& in) {
  io::expect_magic(in, "AOPC");
  const auto version = io::read_le<std::uint16_t>(in);
  if (version != aopc::kVersion) throw Error("unsupported AOPC version " + std::to_string(version));
  const auto n = io::read_le<std::uint32_t>(in);
  const auto mask = io::read_le<std::uint16_t>(in);
  if (!(mask & aopc::kPositions)) throw Error("AOPC file without positions");

  PointCloud cloud;
  cloud.frame = (mask & aopc::kCameraFrame) ? Frame::camera : Frame::world;
  cloud.points = read_vec3(in, n);
  if (mask & aopc::kNormals) {
    cloud.normals = read_vec3(in, n);
    for (auto& v : cloud.normals) v.normalize();
  }
  if (mask & aopc::kCurvature) {
    cloud.curvature.resize(n);
    for (auto& c : cloud.curvature) c = std::clamp<double>(io::read_le<float>(in), 0.0, 1.0);
  }
  if (mask & aopc::kLinkId) {
    cloud.link_id.resize(n);
    for (auto& id : cloud.link_id) id = std::bit_cast<std::int32_t>(io::read_le<std::uint32_t>(in));
  }
  if (mask & aopc::kSurface) {
    cloud.surface.resize(n);
    for (auto& s : cloud.surface) {
      s.triangle = io::read_le<std::uint32_t>(in);
      s.u = io::read_le<float>(in);
      s.v = io::read_le<float>(in);
    }
  }
  cloud.validate();
  return cloud;
}

PointCloud read_aopc(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return read_aopc(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud, std::span<const Rgb> colors) {
  if (!colors.empty() && colors.size() != cloud.size()) throw Error("PLY color count mismatch");
  std::ostringstream out;
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n";
  if (cloud.has_normals()) out << "property float nx\nproperty float ny\nproperty float nz\n";
  if (!colors.empty()) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n" << std::setprecision(9);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& p = cloud.points[i];
    out << p.x() << ' ' << p.y() << ' ' << p.z();
    if (cloud.has_normals()) {
      const auto& n = cloud.normals[i];
      out << ' ' << n.x() << ' ' << n.y() << ' ' << n.z();
    }
    if (!colors.empty()) {
      out << ' ' << int(colors[i][0]) << ' ' << int(colors[i][1]) << ' ' << int(colors[i][2]);
    }
    out << '\n';
  }
  io::write_file_atomic(path, out.str());
}

Rgb heat_color(double value) {
  const double t = std::clamp(std::isfinite(value) ? value : 0.0, 0.0, 1.0);
  auto channel = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x, 0.0, 1.0))); };
  return {channel(2.0 * t), channel(1.0 - std::abs(2.0 * t - 1.0)), channel(2.0 * (1.0 - t))};
}

}  // namespace aograsp::geom
