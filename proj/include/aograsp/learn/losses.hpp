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


#ifndef AOGRASP_LEARN_LOSSES_HPP_
#define AOGRASP_LEARN_LOSSES_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace aograsp::learn {

struct ContrastiveBatch {
  Eigen::MatrixXd f_a;  // D x n_a
  Eigen::MatrixXd f_b;  // D x n_b
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (index in A, index in B)
  // neg_a[z]: indices into B competing with anchor pairs[z].first;
  // neg_b[z]: indices into A competing with anchor pairs[z].second.
  std::vector<std::vector<std::size_t>> neg_a;
  std::vector<std::vector<std::size_t>> neg_b;
  double m_p = 0.1;
  double m_n = 1.4;

  void validate() const;
};

struct ContrastiveResult {
  double loss = 0.0;
  double positive = 0.0;  // pair-term share of loss
  double negative = 0.0;  // negative-term share of loss
  Eigen::MatrixXd grad_a;
  Eigen::MatrixXd grad_b;
};

// sum over pairs (i, j) of
//   [|f_i - f_j| - m_p]_+^2 / |Z|
//   + [m_n - min_k |f_i - f_k|]_+^2 / (2 |N_i|)
//   + [m_n - min_k |f_j - f_k|]_+^2 / (2 |N_j|).
// The hinge derivative is 0 at the kink, the hardest negative is fixed per
// evaluation (lowest index on ties) and the norm derivative is 0 at 0. An
// anchor with no negatives contributes no negative term.
ContrastiveResult hardest_contrastive_loss(const ContrastiveBatch& batch);

struct LossValue {
  double loss = 0.0;
  std::vector<double> grad;
};

// Mean of (pred - target)^2; gradient 2 (pred - target) / n.
LossValue mse_heatmap_loss(std::span<const double> pred, std::span<const double> target);

// Weighted mean sum w (pred - target)^2 / sum w. All-zero weights give 0.
LossValue mse_heatmap_loss(std::span<const double> pred, std::span<const double> target,
                           std::span<const double> weight);

struct LossWeights {
  double hc = 3.0;
  double mse = 1.0;

  void validate() const;
};

double total_loss(double hc, double mse, const LossWeights& w);

}  // namespace aograsp::learn

#endif  // AOGRASP_LEARN_LOSSES_HPP_
