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

#ifndef AOGRASP_GEOM_CLOUD_IO_HPP_
#define AOGRASP_GEOM_CLOUD_IO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::geom {

// AOPC binary layout (little endian):
//   "AOPC" | u16 version | u32 count | u16 mask |
//   positions f32[3n] | normals f32[3n] | curvature f32[n] |
//   link_id u32[n] | surface (u32, f32, f32)[n]
// Only arrays whose mask bit is set are present, in that order. Bit 15 of the
// mask marks a camera-frame cloud.
namespace aopc {
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::uint16_t kPositions = 1u << 0;
inline constexpr std::uint16_t kNormals = 1u << 1;
inline constexpr std::uint16_t kCurvature = 1u << 2;
inline constexpr std::uint16_t kLinkId = 1u << 3;
inline constexpr std::uint16_t kSurface = 1u << 4;
inline constexpr std::uint16_t kCameraFrame = 1u << 15;
}  // namespace aopc

void write_aopc(std::ostream& out, const PointCloud& cloud);
void write_aopc(const std::filesystem::path& path, const PointCloud& cloud);

// Normals are renormalized after widening from f32.
PointCloud read_aopc(std::istream& in);
PointCloud read_aopc(const std::filesystem::path& path);

using Rgb = std::array<std::uint8_t, 3>;

// ASCII PLY with positions, normals when present, and optional colors.
void write_ply(const std::filesystem::path& path, const PointCloud& cloud,
               std::span<const Rgb> colors = {});

// Maps a value in [0, 1] onto a blue-to-red ramp for heat visualizations.
Rgb heat_color(double value);

}  // namespace aograsp::geom

#endif  // AOGRASP_GEOM_CLOUD_IO_HPP_
