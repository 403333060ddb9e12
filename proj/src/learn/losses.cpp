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


#include "aograsp/learn/losses.hpp"

#include <cmath>
#include <limits>

#include "aograsp/common/error.hpp"

namespace aograsp::learn {

void ContrastiveBatch::validate() const {
  if (f_a.rows() != f_b.rows()) throw Error("contrastive batch: feature dimensions differ");
  if (neg_a.size() != pairs.size() || neg_b.size() != pairs.size())
    throw Error("contrastive batch: negative sets must match the pair count");
  if (!(m_p >= 0.0) || !(m_n >= 0.0)) throw Error("contrastive batch: margins must be non-negative");
  const auto na = static_cast<std::size_t>(f_a.cols());
  const auto nb = static_cast<std::size_t>(f_b.cols());
  for (std::size_t z = 0; z < pairs.size(); ++z) {
    const auto [i, j] = pairs[z];
    if (i >= na || j >= nb) throw Error("contrastive batch: pair index out of range");
    for (std::size_t k : neg_a[z]) {
      if (k >= nb) throw Error("contrastive batch: negative index out of range");
      if (k == j) throw Error("contrastive batch: negative equals the anchor's match");
    }
    for (std::size_t k : neg_b[z]) {
      if (k >= na) throw Error("contrastive batch: negative index out of range");
      if (k == i) throw Error("contrastive batch: negative equals the anchor's match");
    }
  }
}

namespace {

// Negative term for one anchor; accumulates its gradient.
double negative_term(const Eigen::MatrixXd& anchors, std::size_t anchor, const Eigen::MatrixXd& others,
                     const std::vector<std::size_t>& negatives, double m_n, Eigen::MatrixXd& grad_anchor,
                     Eigen::MatrixXd& grad_other) {
  if (negatives.empty()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t hardest = 0;
  for (std::size_t k : negatives) {
    const double d = (anchors.col(anchor) - others.col(k)).norm();
    if (d < best || (d == best && k < hardest)) {
      best = d;
      hardest = k;
    }
  }
  const double hinge = m_n - best;
  if (!(hinge > 0.0)) return 0.0;
  const double denom = 2.0 * static_cast<double>(negatives.size());
  if (best > 0.0) {
    // d/df_anchor of hinge^2/denom = -2 hinge/denom * (f_a - f_k)/d
    const Eigen::VectorXd u = (anchors.col(anchor) - others.col(hardest)) / best;
    const double scale = -2.0 * hinge / denom;
    grad_anchor.col(anchor) += scale * u;
    grad_other.col(hardest) -= scale * u;
  }
  return hinge * hinge / denom;
}

}  // namespace

ContrastiveResult hardest_contrastive_loss(const ContrastiveBatch& batch) {
  batch.validate();
  ContrastiveResult out;
  out.grad_a = Eigen::MatrixXd::Zero(batch.f_a.rows(), batch.f_a.cols());
  out.grad_b = Eigen::MatrixXd::Zero(batch.f_b.rows(), batch.f_b.cols());
  if (batch.pairs.empty()) return out;

  const double inv_z = 1.0 / static_cast<double>(batch.pairs.size());
  for (std::size_t z = 0; z < batch.pairs.size(); ++z) {
    const auto [i, j] = batch.pairs[z];
    const double d = (batch.f_a.col(i) - batch.f_b.col(j)).norm();
    const double hinge = d - batch.m_p;
    if (hinge > 0.0) {
      out.positive += hinge * hinge * inv_z;
      const Eigen::VectorXd u = (batch.f_a.col(i) - batch.f_b.col(j)) / d;
      out.grad_a.col(i) += 2.0 * hinge * inv_z * u;
      out.grad_b.col(j) -= 2.0 * hinge * inv_z * u;
    }
    out.negative += negative_term(batch.f_a, i, batch.f_b, batch.neg_a[z], batch.m_n, out.grad_a, out.grad_b);
    out.negative += negative_term(batch.f_b, j, batch.f_a, batch.neg_b[z], batch.m_n, out.grad_b, out.grad_a);
  }
  out.loss = out.positive + out.negative;
  return out;
}

LossValue mse_heatmap_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size()) throw Error("mse_heatmap_loss: length mismatch");
  LossValue out;
  out.grad.resize(pred.size());
  if (pred.empty()) return out;
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - target[i];
    out.loss += e * e;
    out.grad[i] = 2.0 * e * inv_n;
  }
  out.loss *= inv_n;
  return out;
}

LossValue mse_heatmap_loss(std::span<const double> pred, std::span<const double> target,
                           std::span<const double> weight) {
  if (pred.size() != target.size() || pred.size() != weight.size()) throw Error("mse_heatmap_loss: length mismatch");
  LossValue out;
  out.grad.assign(pred.size(), 0.0);
  double total = 0.0;
  for (double w : weight) {
    if (!(w >= 0.0)) throw Error("mse_heatmap_loss: weights must be non-negative");
    total += w;
  }
  if (total == 0.0) return out;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - target[i];
    out.loss += weight[i] * e * e;
    out.grad[i] = 2.0 * weight[i] * e / total;
  }
  out.loss /= total;
  return out;
}

void LossWeights::validate() const {
  if (!(hc >= 0.0) || !(mse >= 0.0)) throw Error("loss weights must be non-negative");
}

double total_loss(double hc, double mse, const LossWeights& w) { return w.hc * hc + w.mse * mse; }

}  // namespace aograsp::learn
