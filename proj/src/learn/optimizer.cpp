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


#include "aograsp/learn/optimizer.hpp"

#include <cmath>

#include "aograsp/common/error.hpp"

namespace aograsp::learn {

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error("optimizer: learning_rate must be positive");
  if (!(weight_decay >= 0.0)) throw Error("optimizer: weight_decay must be non-negative");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("optimizer: gamma must be in (0, 1]");
  if (step_size == 0) throw Error("optimizer: step_size must be >= 1");
  if (batch_size == 0) throw Error("optimizer: batch_size must be >= 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw Error("optimizer: betas must be in [0, 1)");
  if (!(epsilon > 0.0)) throw Error("optimizer: epsilon must be positive");
}

double OptimizerConfig::rate_at(std::size_t completed) const {
  return learning_rate * std::pow(gamma, static_cast<double>(completed / step_size));
}

template <typename T>
Adam<T>::Adam(const OptimizerConfig& cfg, std::size_t parameter_count)
    : cfg_(cfg), m_(parameter_count, T(0)), v_(parameter_count, T(0)) {
  cfg_.validate();
}

template <typename T>
void Adam<T>::step(std::span<T> params, std::span<const T> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) throw Error("adam: parameter count mismatch");
  const double lr = cfg_.rate_at(steps_);
  ++steps_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(steps_));
  const T b1 = static_cast<T>(cfg_.beta1);
  const T b2 = static_cast<T>(cfg_.beta2);
  const T wd = static_cast<T>(cfg_.weight_decay);
  const T step = static_cast<T>(lr / c1);
  const T root_c2 = static_cast<T>(std::sqrt(c2));
  const T eps = static_cast<T>(cfg_.epsilon);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const T g = grad[k] + wd * params[k];
    m_[k] = b1 * m_[k] + (T(1) - b1) * g;
    v_[k] = b2 * v_[k] + (T(1) - b2) * g * g;
    params[k] -= step * m_[k] / (std::sqrt(v_[k]) / root_c2 + eps);
  }
}

template class Adam<double>;
template class Adam<float>;

}  // namespace aograsp::learn
