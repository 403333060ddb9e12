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

#ifndef AOGRASP_ARTOBJ_PROCEDURAL_HPP_
#define AOGRASP_ARTOBJ_PROCEDURAL_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "aograsp/artobj/object.hpp"

namespace aograsp::artobj {

enum class ProceduralKind { box_lid, cabinet_door, drawer, bin_swing_lid };
enum class HingeSide { left, right, top, bottom };
enum class HandleKind { automatic, bar, knob, lip };

// Objects face +x with z up. "Left" and "right" are as seen by a viewer in
// front of the object. For lids, `top` hinges the back edge and `bottom` the
// front edge. Drawers ignore the hinge side.
struct ProceduralParams {
  double size = 0.5;            // overall scale in meters, [0.2, 1.0]
  double handle_radius = 0.01;  // meters, [0.005, 0.03]
  HingeSide hinge = HingeSide::right;
  HandleKind handle = HandleKind::automatic;
};

// Builds an object with one base link, one movable link per actuated joint
// and one actionable handle fixed to each movable link. Revolute parts open
// over [0, 90 deg], prismatic ones over [0, 0.3 m], both closed at 0. The seed
// jitters proportions and handle placement.
ArticulatedObject generate_procedural(ProceduralKind kind, const ProceduralParams& params,
                                      std::uint64_t seed);

std::string_view to_string(ProceduralKind kind);
std::string_view to_string(HingeSide side);
std::string_view to_string(HandleKind kind);
std::optional<ProceduralKind> parse_procedural_kind(std::string_view text);
std::optional<HingeSide> parse_hinge_side(std::string_view text);
std::optional<HandleKind> parse_handle_kind(std::string_view text);

}  // namespace aograsp::artobj

#endif  // AOGRASP_ARTOBJ_PROCEDURAL_HPP_
