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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tensorfm/model.hpp"
#include "tensorfm/scoring.hpp"

namespace tfm {

/// −[y ln p + (1−y) ln(1−p)] for a probability p.
double bce_loss(double probability, int label);
/// Same loss evaluated from the raw score: softplus(s) − y·s, stable for any |s|.
double bce_from_logit(double score, int label);

// Gradient accumulator with the same block shapes as a ModelBundle. Rows of
// linear.w and embeddings are tracked so that clearing and sparse updates only
// visit features that appeared in the batch.
struct GradBundle {
  double bias = 0.0;
  std::vector<double> w;
  Matrix embeddings;
  std::vector<double> pair_upper;
  std::vector<CPFactorSet> cp;
  std::vector<TuckerFactorSet> tucker;
  std::vector<std::size_t> touched;

  static GradBundle zeros_like(const ModelBundle& bundle);

  void mark(std::size_t feature) {
    if (!touched_flag_[feature]) {
      touched_flag_[feature] = 1;
      touched.push_back(feature);
    }
  }
  /// Zeros every block and forgets the touched rows.
  void clear();
  void scale(double factor);

 private:
  std::vector<char> touched_flag_;
};

/// Adds upstream · ∂score/∂θ for every parameter into `grads`. `cache` must come from
/// forward() on the same bundle and instance; throws ConfigError otherwise.
void backward(const ModelBundle& bundle, const Instance& instance, const ForwardCache& cache,
              double upstream, GradBundle& grads);

/// Runs the forward pass itself and returns a fresh gradient.
GradBundle backward(const ModelBundle& bundle, const Instance& instance, double upstream);

enum class BlockGroup { kBias, kLinear, kEmbedding, kInteraction };

// A parameter block paired with its gradient. Row-sparse blocks (linear.w,
// embeddings) only carry meaningful gradient on the rows listed in
// GradBundle::touched.
struct BlockRef {
  std::string name;
  BlockGroup group;
  std::span<double> params;
  std::span<const double> grads;
  std::size_t row_width = 0;  // > 0 for row-sparse blocks
};

/// Blocks in a fixed order: linear.b, linear.w, embeddings, fwfm.S.upper,
/// cp.<l>.factor.<b>, tucker.<l>.core, tucker.<l>.factor.<b>.
std::vector<BlockRef> block_refs(ModelBundle& bundle, const GradBundle& grads);

}  // namespace tfm
