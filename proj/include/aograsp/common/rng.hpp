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

#ifndef AOGRASP_COMMON_RNG_HPP_
#define AOGRASP_COMMON_RNG_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace aograsp {

// Seeded generator with platform-independent derived distributions.
//
// std::uniform_real_distribution and friends are implementation-defined, so
// every draw here is computed from the raw mt19937_64 stream (which the
// standard fully specifies). Identical seeds give identical sequences on every
// compiler and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();

  // Uniformly distributed direction on the unit sphere.
  Eigen::Vector3d unit_vector();

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a stream id (splitmix64 finalizer) so that parallel
// jobs get independent, order-free generators.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace aograsp

#endif  // AOGRASP_COMMON_RNG_HPP_
