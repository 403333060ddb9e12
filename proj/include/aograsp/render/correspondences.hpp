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

#ifndef AOGRASP_RENDER_CORRESPONDENCES_HPP_
#define AOGRASP_RENDER_CORRESPONDENCES_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::render {

inline constexpr double kDefaultCorrespondenceEps = 0.005;

struct CorrespondenceSet {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (index in A, index in B)
  std::uint32_t state_id = 0;

  bool operator==(const CorrespondenceSet&) const = default;
};

// Matches points of two world-frame views of the same joint state. A pair
// (a, b) is kept when b is a's nearest same-link point in B, a is b's
// nearest same-link point in A, and they lie closer than eps. Pairs are
// ordered by index in A.
CorrespondenceSet extract_correspondences(const geom::PointCloud& view_a, const geom::PointCloud& view_b,
                                          double eps = kDefaultCorrespondenceEps);

// "AOCR" | u32 count | (u32, u32)[count], little endian.
void write_aocr(std::ostream& out, const CorrespondenceSet& set);
void write_aocr(const std::filesystem::path& path, const CorrespondenceSet& set);
CorrespondenceSet read_aocr(std::istream& in);
CorrespondenceSet read_aocr(const std::filesystem::path& path);

}  // namespace aograsp::render

#endif  // AOGRASP_RENDER_CORRESPONDENCES_HPP_
