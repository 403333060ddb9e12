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

#ifndef AOGRASP_ARTOBJ_OBJECT_IO_HPP_
#define AOGRASP_ARTOBJ_OBJECT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aograsp/artobj/object.hpp"

namespace aograsp::artobj {

// Parses the object JSON document:
//
//   {"name": ..., "links": [{"name", "tag", "vertices": [[x,y,z]...],
//                            "triangles": [[i,j,k]...]}],
//    "joints": [{"name", "type", "parent", "child", "axis", "origin",
//                "limits": [lower, upper], "closed_value"}]}
//
// Schema violations throw with the JSON path of the offending value. Axes
// within 1e-3 of unit length are normalized and reported in `warnings`.
ArticulatedObject parse_object(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Inverse of parse_object; doubles are printed in round-trip form.
std::string serialize_object(const ArticulatedObject& obj);

ArticulatedObject load_object(const std::filesystem::path& path,
                              std::vector<std::string>* warnings = nullptr);
void save_object(const std::filesystem::path& path, const ArticulatedObject& obj);

}  // namespace aograsp::artobj

#endif  // AOGRASP_ARTOBJ_OBJECT_IO_HPP_
