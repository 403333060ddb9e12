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


#include "aograsp/learn/network.hpp"

#include <cmath>
#include <string>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"
#include "aograsp/geom/neighbors.hpp"
#include "json.hpp"

namespace aograsp::learn {

using json = nlohmann::ordered_json;

void EncoderConfig::validate() const {
  if (radii.empty()) throw Error("encoder: at least one scale is required");
  if (nsamples.size() != radii.size() || widths.size() != radii.size())
    throw Error("encoder: radii, nsamples and widths must have equal length");
  for (std::size_t s = 0; s < radii.size(); ++s) {
    if (!(radii[s] > 0.0) || !std::isfinite(radii[s])) throw Error("encoder: radii must be positive");
    if (s > 0 && !(radii[s] > radii[s - 1])) throw Error("encoder: radii must be strictly increasing");
    if (nsamples[s] == 0) throw Error("encoder: nsamples must be >= 1");
    if (widths[s] == 0) throw Error("encoder: widths must be >= 1");
  }
  if (feature_dim == 0) throw Error("encoder: feature_dim must be >= 1");
}

void HeadConfig::validate() const {
  for (std::size_t w : hidden)
    if (w == 0) throw Error("head: hidden widths must be >= 1");
}

void NetworkConfig::validate() const {
  encoder.validate();
  head.validate();
}

std::string network_config_to_json(const NetworkConfig& cfg) {
  json j;
  j["encoder"]["radii"] = cfg.encoder.radii;
  j["encoder"]["nsamples"] = cfg.encoder.nsamples;
  j["encoder"]["widths"] = cfg.encoder.widths;
  j["encoder"]["feature_dim"] = cfg.encoder.feature_dim;
  j["head"]["hidden"] = cfg.head.hidden;
  return j.dump();
}

NetworkConfig network_config_from_json(const std::string& text) {
  NetworkConfig cfg;
  try {
    const json j = json::parse(text);
    if (j.contains("encoder")) {
      const auto& e = j.at("encoder");
      if (e.contains("radii")) cfg.encoder.radii = e.at("radii").get<std::vector<double>>();
      if (e.contains("nsamples")) cfg.encoder.nsamples = e.at("nsamples").get<std::vector<std::size_t>>();
      if (e.contains("widths")) cfg.encoder.widths = e.at("widths").get<std::vector<std::size_t>>();
      if (e.contains("feature_dim")) cfg.encoder.feature_dim = e.at("feature_dim").get<std::size_t>();
    }
    if (j.contains("head") && j.at("head").contains("hidden"))
      cfg.head.hidden = j.at("head").at("hidden").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw Error(std::string("network config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PreparedCloud prepare_cloud(const geom::PointCloud& cloud, const EncoderConfig& cfg) {
  cfg.validate();
  if (cloud.empty()) throw Error("prepare_cloud: empty cloud");
  if (!cloud.has_normals()) throw Error("prepare_cloud: cloud has no normals");
  if (!cloud.has_curvature()) throw Error("prepare_cloud: cloud has no curvature");

  PreparedCloud out;
  out.points = geom::center_at_mean(cloud).first.points;
  out.normals = cloud.normals;
  out.curvature = cloud.curvature;
  out.radii = cfg.radii;

  const geom::NeighborIndex index(out.points);
  const std::size_t n = out.points.size();
  out.offsets.resize(cfg.scales());
  out.neighbors.resize(cfg.scales());
  for (std::size_t s = 0; s < cfg.scales(); ++s) {
    auto& off = out.offsets[s];
    auto& nb = out.neighbors[s];
    off.reserve(n + 1);
    off.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto list = index.radius(out.points[i], cfg.radii[s], cfg.nsamples[s]);
      for (std::size_t j : list.indices) nb.push_back(static_cast<std::uint32_t>(j));
      off.push_back(static_cast<std::uint32_t>(nb.size()));
    }
  }
  return out;
}

namespace {

template <typename T>
using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

template <typename T>
ScorerNetworkT<T>::ScorerNetworkT(NetworkConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  std::size_t offset = 0;
  auto add = [&](std::size_t rows, std::size_t cols) {
    Dense d;
    d.rows = rows;
    d.cols = cols;
    d.weight = offset;
    offset += rows * cols;
    d.bias = offset;
    offset += rows;
    return d;
  };
  for (std::size_t w : cfg_.encoder.widths) {
    scale_layers_.push_back(add(w, kInputChannels));
    pooled_width_ += w;
  }
  projection_ = add(cfg_.encoder.feature_dim, pooled_width_);
  encoder_count_ = offset;
  std::size_t in = cfg_.encoder.feature_dim;
  for (std::size_t w : cfg_.head.hidden) {
    head_layers_.push_back(add(w, in));
    in = w;
  }
  head_layers_.push_back(add(1, in));
  params_.assign(offset, T(0));
}

template <typename T>
ScorerNetworkT<T> ScorerNetworkT<T>::initialized(const NetworkConfig& cfg, std::uint64_t seed) {
  ScorerNetworkT net(cfg);
  Rng rng(seed);
  auto fill = [&](const Dense& d) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(d.cols));
    for (std::size_t k = 0; k < d.rows * d.cols; ++k) net.params_[d.weight + k] = static_cast<T>(rng.uniform(-bound, bound));
    for (std::size_t k = 0; k < d.rows; ++k) net.params_[d.bias + k] = static_cast<T>(rng.uniform(-bound, bound));
  };
  for (const auto& d : net.scale_layers_) fill(d);
  fill(net.projection_);
  for (const auto& d : net.head_layers_) fill(d);
  return net;
}

template <typename T>
void ScorerNetworkT<T>::input_features(const PreparedCloud& cloud, std::size_t scale, std::size_t center,
                                       std::size_t neighbor, T* out) const {
  const double inv_r = 1.0 / cloud.radii[scale];
  const auto& pc = cloud.points[center];
  const auto& pj = cloud.points[neighbor];
  const auto& nj = cloud.normals[neighbor];
  out[0] = static_cast<T>((pj.x() - pc.x()) * inv_r);
  out[1] = static_cast<T>((pj.y() - pc.y()) * inv_r);
  out[2] = static_cast<T>((pj.z() - pc.z()) * inv_r);
  out[3] = static_cast<T>(pj.x());
  out[4] = static_cast<T>(pj.y());
  out[5] = static_cast<T>(pj.z());
  out[6] = static_cast<T>(nj.x());
  out[7] = static_cast<T>(nj.y());
  out[8] = static_cast<T>(nj.z());
  out[9] = static_cast<T>(cloud.curvature[neighbor]);
}

template <typename T>
ForwardCache<T> ScorerNetworkT<T>::forward(const PreparedCloud& cloud) const {
  if (cloud.radii != cfg_.encoder.radii) throw Error("forward: cloud was prepared for a different encoder");
  const std::size_t n = cloud.size();
  ForwardCache<T> cache;
  cache.pooled = Mat<T>::Zero(pooled_width_, n);
  cache.argmax.assign(pooled_width_ * n, -1);

  Mat<T> x;
  Mat<T> h;
  std::size_t row0 = 0;
  for (std::size_t s = 0; s < scale_layers_.size(); ++s) {
    const Dense& d = scale_layers_[s];
    const Eigen::Map<const RowMat<T>> w(params_.data() + d.weight, d.rows, d.cols);
    const Eigen::Map<const Vec<T>> b(params_.data() + d.bias, d.rows);
    const auto& off = cloud.offsets[s];
    const auto& nb = cloud.neighbors[s];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = off[i + 1] - off[i];
      x.resize(kInputChannels, k);
      for (std::size_t c = 0; c < k; ++c) input_features(cloud, s, i, nb[off[i] + c], x.col(c).data());
      h.noalias() = w * x;
      for (std::size_t r = 0; r < d.rows; ++r) {
        // Strict comparison: the first neighbor wins ties.
        T best = T(0);
        std::int32_t arg = -1;
        for (std::size_t c = 0; c < k; ++c) {
          const T v = h(r, c) + b(r);
          if (v > best) {
            best = v;
            arg = static_cast<std::int32_t>(nb[off[i] + c]);
          }
        }
        cache.pooled(row0 + r, i) = best;
        cache.argmax[i * pooled_width_ + row0 + r] = arg;
      }
    }
    row0 += d.rows;
  }

  {
    const Eigen::Map<const RowMat<T>> w(params_.data() + projection_.weight, projection_.rows, projection_.cols);
    const Eigen::Map<const Vec<T>> b(params_.data() + projection_.bias, projection_.rows);
    cache.features.noalias() = w * cache.pooled;
    cache.features.colwise() += b;
  }

  const Mat<T>* a = &cache.features;
  cache.hidden.reserve(head_layers_.size() - 1);
  for (std::size_t l = 0; l + 1 < head_layers_.size(); ++l) {
    const Dense& d = head_layers_[l];
    const Eigen::Map<const RowMat<T>> w(params_.data() + d.weight, d.rows, d.cols);
    const Eigen::Map<const Vec<T>> b(params_.data() + d.bias, d.rows);
    Mat<T> z = w * (*a);
    z.colwise() += b;
    cache.hidden.push_back(z.cwiseMax(T(0)));
    a = &cache.hidden.back();
  }
  const Dense& last = head_layers_.back();
  const Eigen::Map<const RowMat<T>> w(params_.data() + last.weight, last.rows, last.cols);
  const T b = params_[last.bias];
  const Mat<T> logit = w * (*a);
  cache.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) cache.scores(i) = T(1) / (T(1) + std::exp(-(logit(0, i) + b)));
  return cache;
}

template <typename T>
void ScorerNetworkT<T>::backward(const PreparedCloud& cloud, const ForwardCache<T>& cache, const Mat<T>* d_features,
                                 const Vec<T>* d_scores, std::span<T> grad) const {
  if (grad.size() != params_.size()) throw Error("backward: gradient buffer has the wrong size");
  const std::size_t n = cloud.size();
  const std::size_t dim = cfg_.encoder.feature_dim;
  if (d_features && (static_cast<std::size_t>(d_features->rows()) != dim ||
                     static_cast<std::size_t>(d_features->cols()) != n))
    throw Error("backward: feature gradient has the wrong shape");
  if (d_scores && static_cast<std::size_t>(d_scores->size()) != n)
    throw Error("backward: score gradient has the wrong length");
  if (!d_features && !d_scores) return;

  Mat<T> df = d_features ? *d_features : Mat<T>::Zero(dim, n);

  if (d_scores) {
    Mat<T> da(1, n);
    for (std::size_t i = 0; i < n; ++i) {
      const T s = cache.scores(i);
      da(0, i) = (*d_scores)(i) * s * (T(1) - s);
    }
    for (std::size_t l = head_layers_.size(); l-- > 0;) {
      const Dense& d = head_layers_[l];
      const Mat<T>& input = l == 0 ? cache.features : cache.hidden[l - 1];
      if (l + 1 < head_layers_.size()) da = da.cwiseProduct((cache.hidden[l].array() > T(0)).template cast<T>().matrix());
      const Eigen::Map<const RowMat<T>> w(params_.data() + d.weight, d.rows, d.cols);
      Eigen::Map<RowMat<T>> gw(grad.data() + d.weight, d.rows, d.cols);
      Eigen::Map<Vec<T>> gb(grad.data() + d.bias, d.rows);
      gw.noalias() += da * input.transpose();
      gb += da.rowwise().sum();
      Mat<T> prev = w.transpose() * da;
      da.swap(prev);
    }
    df += da;
  }

  Mat<T> dg;
  {
    const Dense& d = projection_;
    const Eigen::Map<const RowMat<T>> w(params_.data() + d.weight, d.rows, d.cols);
    Eigen::Map<RowMat<T>> gw(grad.data() + d.weight, d.rows, d.cols);
    Eigen::Map<Vec<T>> gb(grad.data() + d.bias, d.rows);
    gw.noalias() += df * cache.pooled.transpose();
    gb += df.rowwise().sum();
    dg.noalias() = w.transpose() * df;
  }

  T x[kInputChannels];
  std::size_t row0 = 0;
  for (std::size_t s = 0; s < scale_layers_.size(); ++s) {
    const Dense& d = scale_layers_[s];
    T* gw = grad.data() + d.weight;
    T* gb = grad.data() + d.bias;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < d.rows; ++r) {
        const std::int32_t arg = cache.argmax[i * pooled_width_ + row0 + r];
        if (arg < 0) continue;
        const T g = dg(row0 + r, i);
        if (g == T(0)) continue;
        input_features(cloud, s, i, static_cast<std::size_t>(arg), x);
        for (std::size_t c = 0; c < kInputChannels; ++c) gw[r * kInputChannels + c] += g * x[c];
        gb[r] += g;
      }
    }
    row0 += d.rows;
  }
}

template <typename T>
std::vector<std::int32_t> activation_signature(const ForwardCache<T>& cache) {
  std::vector<std::int32_t> sig = cache.argmax;
  for (const auto& h : cache.hidden)
    for (Eigen::Index k = 0; k < h.size(); ++k) sig.push_back(h.data()[k] > T(0) ? 1 : 0);
  return sig;
}

template class ScorerNetworkT<double>;
template class ScorerNetworkT<float>;
template std::vector<std::int32_t> activation_signature(const ForwardCache<double>&);
template std::vector<std::int32_t> activation_signature(const ForwardCache<float>&);

Eigen::MatrixXd encode(const geom::PointCloud& cloud, const ScorerNetwork& net) {
  return net.forward(prepare_cloud(cloud, net.config().encoder)).features;
}

std::vector<double> predict_scores(const geom::PointCloud& cloud, const ScorerNetwork& net) {
  const auto cache = net.forward(prepare_cloud(cloud, net.config().encoder));
  return {cache.scores.data(), cache.scores.data() + cache.scores.size()};
}

}  // namespace aograsp::learn
