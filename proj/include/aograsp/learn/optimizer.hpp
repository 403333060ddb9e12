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


#ifndef AOGRASP_LEARN_OPTIMIZER_HPP_
#define AOGRASP_LEARN_OPTIMIZER_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace aograsp::learn {

struct OptimizerConfig {
  double learning_rate = 1e-4;
  double weight_decay = 1e-6;  // L2 term added to the gradient
  double gamma = 0.9;
  std::size_t step_size = 5000;
  std::size_t batch_size = 64;
  std::size_t epochs = 200;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;

  // Learning rate used for the update that follows `completed` updates.
  double rate_at(std::size_t completed) const;
};

// Adam with bias correction and a step-decay schedule.
template <typename T>
class Adam {
 public:
  Adam(const OptimizerConfig& cfg, std::size_t parameter_count);

  // Applies one update in place and advances the schedule.
  void step(std::span<T> params, std::span<const T> grad);

  std::size_t steps() const { return steps_; }
  double current_rate() const { return cfg_.rate_at(steps_); }

 private:
  OptimizerConfig cfg_;
  std::vector<T> m_;
  std::vector<T> v_;
  std::size_t steps_ = 0;
};

extern template class Adam<double>;
extern template class Adam<float>;

}  // namespace aograsp::learn

#endif  // AOGRASP_LEARN_OPTIMIZER_HPP_
