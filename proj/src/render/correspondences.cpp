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

#include "aograsp/render/correspondences.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "aograsp/geom/neighbors.hpp"

namespace aograsp::render {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// For each point of `from`, the nearest same-link point of `to` strictly
// closer than eps (ties to the lower index), or kNone.
std::vector<std::size_t> nearest_same_link(const geom::PointCloud& from, const geom::PointCloud& to, double eps) {
  geom::NeighborIndex index(to.points);
  std::vector<std::size_t> best(from.size(), kNone);
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto nb = index.radius(from.points[i], eps, geom::kUnlimited);
    for (std::size_t k = 0; k < nb.indices.size(); ++k) {
      if (!(nb.distances[k] < eps)) break;
      const std::size_t j = nb.indices[k];
      if (from.has_link_id() && to.has_link_id() && from.link_id[i] != to.link_id[j]) continue;
      best[i] = j;
      break;
    }
  }
  return best;
}

}  // namespace

CorrespondenceSet extract_correspondences(const geom::PointCloud& view_a, const geom::PointCloud& view_b,
                                          double eps) {
  if (!(eps > 0.0)) throw Error("extract_correspondences: eps must be positive");
  if (view_a.frame != geom::Frame::world || view_b.frame != geom::Frame::world) {
    throw Error("extract_correspondences: views must be in the world frame");
  }
  CorrespondenceSet out;
  if (view_a.empty() || view_b.empty()) return out;
  const auto ab = nearest_same_link(view_a, view_b, eps);
  const auto ba = nearest_same_link(view_b, view_a, eps);
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ab[i] != kNone && ba[ab[i]] == i) {
      out.pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(ab[i]));
    }
  }
  return out;
}

void write_aocr(std::ostream& out, const CorrespondenceSet& set) {
  io::write_magic(out, "AOCR");
  io::write_le(out, static_cast<std::uint32_t>(set.pairs.size()));
  for (const auto& [a, b] : set.pairs) {
    io::write_le(out, a);
    io::write_le(out, b);
  }
}

void write_aocr(const std::filesystem::path& path, const CorrespondenceSet& set) {
  std::ostringstream buffer(std::ios::binary);
  write_aocr(buffer, set);
  io::write_file_atomic(path, buffer.str());
}

CorrespondenceSet read_aocr(std::istream& in) {
  io::expect_magic(in, "AOCR");
  const auto n = io::read_le<std::uint32_t>(in);
  CorrespondenceSet set;
  set.pairs.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto a = io::read_le<std::uint32_t>(in);
    const auto b = io::read_le<std::uint32_t>(in);
    set.pairs.emplace_back(a, b);
  }
  return set;
}

CorrespondenceSet read_aocr(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_aocr(in);
}

}  // namespace aograsp::render
