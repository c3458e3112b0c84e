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

#include "tensorfm/optimizer.hpp"

#include <cmath>
#include <string>

#include "tensorfm/error.hpp"

namespace tfm {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be non-negative and finite");
  }
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (l2_linear < 0.0 || l2_embedding < 0.0 || l2_factors < 0.0) {
    throw ConfigError("L2 coefficients must be non-negative");
  }
  if (!(adagrad_epsilon >= 0.0)) throw ConfigError("adagrad_epsilon must be non-negative");
}

AdagradState AdagradState::for_bundle(ModelBundle& bundle) {
  AdagradState state;
  const GradBundle shapes = GradBundle::zeros_like(bundle);
  for (const BlockRef& ref : block_refs(bundle, shapes)) state.accumulators.emplace_back(ref.params.size(), 0.0);
  return state;
}

namespace {

double l2_for(BlockGroup group, const TrainConfig& config) {
  switch (group) {
    case BlockGroup::kBias:
      return 0.0;
    case BlockGroup::kLinear:
      return config.l2_linear;
    case BlockGroup::kEmbedding:
      return config.l2_embedding;
    case BlockGroup::kInteraction:
      return config.l2_factors;
  }
  return 0.0;
}

void update_range(const BlockRef& ref, std::vector<double>& acc, std::size_t begin, std::size_t end, double l2,
                  const TrainConfig& config) {
  for (std::size_t i = begin; i < end; ++i) {
    const double raw = ref.grads[i];
    if (!std::isfinite(raw)) {
      throw NumericError("non-finite gradient in block " + ref.name + " at entry " + std::to_string(i));
    }
    const double g = raw + l2 * ref.params[i];
    acc[i] += g * g;
    ref.params[i] -= config.learning_rate * g / (std::sqrt(acc[i]) + config.adagrad_epsilon);
  }
}

}  // namespace

void adagrad_step(ModelBundle& bundle, const GradBundle& grads, AdagradState& state, const TrainConfig& config) {
  const auto refs = block_refs(bundle, grads);
  if (refs.size() != state.accumulators.size()) throw ConfigError("optimizer state does not match the model");
  for (std::size_t b = 0; b < refs.size(); ++b) {
    const BlockRef& ref = refs[b];
    auto& acc = state.accumulators[b];
    if (acc.size() != ref.params.size() || ref.grads.size() != ref.params.size()) {
      throw ShapeError("optimizer state for block " + ref.name + " has the wrong size");
    }
    const double l2 = l2_for(ref.group, config);
    if (ref.row_width == 0) {
      update_range(ref, acc, 0, ref.params.size(), l2, config);
      continue;
    }
    for (std::size_t row : grads.touched) {
      update_range(ref, acc, row * ref.row_width, (row + 1) * ref.row_width, l2, config);
    }
  }
}

}  // namespace tfm
