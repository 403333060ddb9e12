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

#ifndef AOGRASP_COMMON_BINARY_IO_HPP_
#define AOGRASP_COMMON_BINARY_IO_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "aograsp/common/error.hpp"

namespace aograsp::io {

// Little-endian scalar encoding, independent of host byte order.
template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::is_arithmetic_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  static_assert(std::is_arithmetic_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw Error("unexpected end of binary stream");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void write_magic(std::ostream& out, std::string_view magic);

// Throws if the next bytes differ from `magic`.
void expect_magic(std::istream& in, std::string_view magic);

// Whole-file helpers used for byte-level comparisons and atomic rewrites.
std::string read_file(const std::filesystem::path& path);

// Writes via a temporary sibling and rename, so readers never observe a
// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace aograsp::io

#endif  // AOGRASP_COMMON_BINARY_IO_HPP_
