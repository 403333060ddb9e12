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


#ifndef AOGRASP_LEARN_CHECKPOINT_HPP_
#define AOGRASP_LEARN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aograsp/learn/network.hpp"

namespace aograsp::learn {

struct Checkpoint {
  NetworkConfig config;
  std::vector<double> params;
  std::uint64_t step = 0;
  std::uint64_t seed = 0;
  std::string stage;               // "init", "pretrain", "finetune", ...
  std::string metadata = "{}";     // free-form JSON object

  ScorerNetwork network() const;
};

Checkpoint make_checkpoint(const ScorerNetwork& net, std::uint64_t step, std::uint64_t seed, std::string stage,
                           std::string metadata = "{}");

// "AOCK" | u32 version | u64 header bytes | JSON header | u64 count | f64[count]
void write_checkpoint(std::ostream& out, const Checkpoint& ck);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace aograsp::learn

#endif  // AOGRASP_LEARN_CHECKPOINT_HPP_
