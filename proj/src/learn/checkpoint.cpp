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


#include "aograsp/learn/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aograsp/common/binary_io.hpp"
#include "aograsp/common/error.hpp"
#include "json.hpp"

namespace aograsp::learn {

namespace {

constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kMaxHeader = 1u << 20;

}  // namespace

ScorerNetwork Checkpoint::network() const {
  ScorerNetwork net(config);
  if (net.parameter_count() != params.size())
    throw Error("checkpoint: " + std::to_string(params.size()) + " parameters but the config needs " +
                std::to_string(net.parameter_count()));
  std::copy(params.begin(), params.end(), net.parameters().begin());
  return net;
}

Checkpoint make_checkpoint(const ScorerNetwork& net, std::uint64_t step, std::uint64_t seed, std::string stage,
                           std::string metadata) {
  Checkpoint ck;
  ck.config = net.config();
  ck.params.assign(net.parameters().begin(), net.parameters().end());
  ck.step = step;
  ck.seed = seed;
  ck.stage = std::move(stage);
  ck.metadata = std::move(metadata);
  return ck;
}

void write_checkpoint(std::ostream& out, const Checkpoint& ck) {
  nlohmann::ordered_json header;
  header["format"] = "aograsp-checkpoint";
  header["network"] = nlohmann::ordered_json::parse(network_config_to_json(ck.config));
  header["step"] = ck.step;
  header["seed"] = ck.seed;
  header["stage"] = ck.stage;
  header["metadata"] = nlohmann::ordered_json::parse(ck.metadata);
  const std::string text = header.dump();
  io::write_magic(out, "AOCK");
  io::write_le<std::uint32_t>(out, kVersion);
  io::write_le<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  io::write_le<std::uint64_t>(out, ck.params.size());
  for (double p : ck.params) io::write_le<double>(out, p);
  if (!out) throw Error("checkpoint: write failed");
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ostringstream buf(std::ios::binary);
  write_checkpoint(buf, ck);
  io::write_file_atomic(path, buf.str());
}

Checkpoint read_checkpoint(std::istream& in) {
  io::expect_magic(in, "AOCK");
  const auto version = io::read_le<std::uint32_t>(in);
  if (version != kVersion) throw Error("checkpoint: unsupported version " + std::to_string(version));
  const auto header_len = io::read_le<std::uint64_t>(in);
  if (header_len > kMaxHeader) throw Error("checkpoint: header too large");
  std::string text(header_len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw Error("checkpoint: truncated header");

  Checkpoint ck;
  try {
    const auto header = nlohmann::ordered_json::parse(text);
    ck.config = network_config_from_json(header.at("network").dump());
    ck.step = header.at("step").get<std::uint64_t>();
    ck.seed = header.at("seed").get<std::uint64_t>();
    ck.stage = header.at("stage").get<std::string>();
    ck.metadata = header.at("metadata").dump();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("checkpoint: bad header: ") + e.what());
  }
  const auto count = io::read_le<std::uint64_t>(in);
  const std::size_t expected = ScorerNetwork(ck.config).parameter_count();
  if (count != expected)
    throw Error("checkpoint: " + std::to_string(count) + " parameters but the config needs " +
                std::to_string(expected));
  ck.params.resize(count);
  for (auto& p : ck.params) {
    p = io::read_le<double>(in);
    if (!std::isfinite(p)) throw Error("checkpoint: non-finite parameter");
  }
  return ck;
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace aograsp::learn
