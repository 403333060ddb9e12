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


#ifndef AOGRASP_LEARN_NETWORK_HPP_
#define AOGRASP_LEARN_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::learn {

// Per-neighbor input: offset from the ball center scaled by the radius (3),
// neighbor position relative to the cloud mean (3), normal (3), curvature (1).
inline constexpr std::size_t kInputChannels = 10;

struct EncoderConfig {
  std::vector<double> radii{0.1, 0.2, 0.4, 0.8};
  std::vector<std::size_t> nsamples{32, 32, 32, 32};
  std::vector<std::size_t> widths{32, 32, 32, 32};
  std::size_t feature_dim = 32;

  std::size_t scales() const { return radii.size(); }
  void validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

struct HeadConfig {
  std::vector<std::size_t> hidden{32};

  void validate() const;
  bool operator==(const HeadConfig&) const = default;
};

struct NetworkConfig {
  EncoderConfig encoder;
  HeadConfig head;

  void validate() const;
  bool operator==(const NetworkConfig&) const = default;
};

std::string network_config_to_json(const NetworkConfig& cfg);
NetworkConfig network_config_from_json(const std::string& text);

// A cloud recentred at its mean with ball-query neighbor lists for every
// scale. Depends only on the geometry and the encoder config, so it is built
// once per cloud and reused across training steps.
struct PreparedCloud {
  std::vector<geom::Point3> points;
  std::vector<geom::Vector3> normals;
  std::vector<double> curvature;
  // neighbors[s][offsets[s][i] .. offsets[s][i+1]) are the neighbors of point
  // i at scale s, nearest first, index tie-break.
  std::vector<std::vector<std::uint32_t>> offsets;
  std::vector<std::vector<std::uint32_t>> neighbors;
  std::vector<double> radii;

  std::size_t size() const { return points.size(); }
};

// Throws if normals or curvature are missing or the cloud is empty.
PreparedCloud prepare_cloud(const geom::PointCloud& cloud, const EncoderConfig& cfg);

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
struct ForwardCache {
  Mat<T> pooled;                       // sum(widths) x n
  std::vector<std::int32_t> argmax;    // (sum(widths) x n), -1 when the pooled ReLU is 0
  Mat<T> features;                     // D x n
  std::vector<Mat<T>> hidden;          // post-ReLU head activations, one per hidden layer
  Vec<T> scores;                       // n, in (0, 1)
};

// Multi-radius aggregation encoder followed by an MLP head with a sigmoid.
//   per scale s: g_s(i) = max_j ReLU(W_s x_ij + b_s) over ball neighbors j
//   f(i) = W_o [g_1(i); ...; g_S(i)] + b_o
//   score(i) = sigmoid(head(f(i)))
// Parameters live in one flat vector; the layout is fixed by the config.
template <typename T>
class ScorerNetworkT {
 public:
  explicit ScorerNetworkT(NetworkConfig cfg);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  static ScorerNetworkT initialized(const NetworkConfig& cfg, std::uint64_t seed);

  const NetworkConfig& config() const { return cfg_; }
  std::size_t parameter_count() const { return params_.size(); }
  std::span<T> parameters() { return params_; }
  std::span<const T> parameters() const { return params_; }

  // Number of leading parameters that belong to the encoder.
  std::size_t encoder_parameter_count() const { return encoder_count_; }

  ForwardCache<T> forward(const PreparedCloud& cloud) const;

  // Accumulates (+=) dL/dtheta into grad. Either upstream term may be null.
  // d_features is D x n; d_scores has n entries.
  void backward(const PreparedCloud& cloud, const ForwardCache<T>& cache, const Mat<T>* d_features,
                const Vec<T>* d_scores, std::span<T> grad) const;

  template <typename U>
  ScorerNetworkT<U> cast() const {
    ScorerNetworkT<U> out(cfg_);
    auto dst = out.parameters();
    for (std::size_t i = 0; i < params_.size(); ++i) dst[i] = static_cast<U>(params_[i]);
    return out;
  }

 private:
  struct Dense {
    std::size_t weight = 0;  // offset of a rows x cols row-major block
    std::size_t bias = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
  };

  void input_features(const PreparedCloud& cloud, std::size_t scale, std::size_t center, std::size_t neighbor,
                      T* out) const;

  NetworkConfig cfg_;
  std::vector<T> params_;
  std::vector<Dense> scale_layers_;
  Dense projection_;
  std::vector<Dense> head_layers_;  // last one has a single output
  std::size_t encoder_count_ = 0;
  std::size_t pooled_width_ = 0;
};

using ScorerNetwork = ScorerNetworkT<double>;

extern template class ScorerNetworkT<double>;
extern template class ScorerNetworkT<float>;

// Per-point features (D x n) and scores of a cloud in 64-bit mode.
Eigen::MatrixXd encode(const geom::PointCloud& cloud, const ScorerNetwork& net);
std::vector<double> predict_scores(const geom::PointCloud& cloud, const ScorerNetwork& net);

// The piecewise-linear regime of a forward pass: pooling winners and head
// ReLU signs. Two parameter vectors with equal signatures lie in the same
// smooth piece, which is what a finite-difference check needs.
template <typename T>
std::vector<std::int32_t> activation_signature(const ForwardCache<T>& cache);

}  // namespace aograsp::learn

#endif  // AOGRASP_LEARN_NETWORK_HPP_
