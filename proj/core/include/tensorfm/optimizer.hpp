// Copyright 2026 The tensorfm Authors
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

#pragma once

#include <cstdint>
#include <vector>

#include "tensorfm/gradients.hpp"
#include "tensorfm/model.hpp"

namespace tfm {

struct TrainConfig {
  double learning_rate = 0.05;
  double l2_linear = 0.0;
  double l2_embedding = 0.0;
  double l2_factors = 0.0;
  std::size_t epochs = 5;
  std::size_t batch_size = 1024;
  std::uint64_t seed = 0;
  double adagrad_epsilon = 1e-8;

  /// Throws ConfigError unless learning_rate ≥ 0, epochs ≥ 1, batch_size ≥ 1 and all L2 ≥ 0.
  void validate() const;
};

// Per-coordinate squared-gradient sums, one buffer per block in block_refs() order.
struct AdagradState {
  std::vector<std::vector<double>> accumulators;

  static AdagradState for_bundle(ModelBundle& bundle);
};

/// G += g², θ −= lr·g/(√G + ε), with the block's L2 term folded into g first.
/// Row-sparse blocks only update the rows in grads.touched. The bias is not
/// regularized. Throws NumericError naming the block on a non-finite gradient.
void adagrad_step(ModelBundle& bundle, const GradBundle& grads, AdagradState& state, const TrainConfig& config);

}  // namespace tfm
