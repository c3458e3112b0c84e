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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tensorfm/schema.hpp"
#include "tensorfm/tensor.hpp"

namespace tfm {

enum class ModelKind {
  kLR,              // linear only
  kFM,              // fixed S = ½(1 - I)
  kFwFM,            // dense symmetric zero-diagonal S
  kFwFMLowRank,     // S = U Vᵀ, rank r
  kHOFM,            // ANOVA kernel up to degree d
  kTensorFM,        // CP-factorized S^[ℓ], ℓ = 2..d
  kTensorFMTucker,  // Tucker-factorized S^[ℓ], ℓ = 2..d
};

/// CLI / file token: lr, fm, fwfm, fwfm-lr, hofm, tensorfm, tensorfm-tucker.
std::string_view kind_name(ModelKind kind);
ModelKind parse_kind(std::string_view name);

bool uses_embeddings(ModelKind kind);

struct LinearWeights {
  std::vector<double> w;  // one weight per global feature
  double b = 0.0;

  bool operator==(const LinearWeights&) const = default;
};

// FwFM field-pair weights. Only the strict upper triangle is stored, so the
// matrix is symmetric with a zero diagonal by construction.
class FieldPairWeights {
 public:
  FieldPairWeights() = default;
  explicit FieldPairWeights(std::size_t n) : n_(n), upper_(n * (n - 1) / 2, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i < j ? upper_[slot(i, j)] : upper_[slot(j, i)];
  }
  /// Entry (i, j) with i < j.
  double& upper(std::size_t i, std::size_t j) { return upper_[slot(i, j)]; }
  std::vector<double>& values() { return upper_; }
  const std::vector<double>& values() const { return upper_; }
  Matrix to_matrix() const;

  bool operator==(const FieldPairWeights&) const = default;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

/// A complete model. Which optional blocks are populated depends on `kind`;
/// validate() enforces it.
struct ModelBundle {
  ModelKind kind = ModelKind::kLR;
  FieldSchema schema;
  std::size_t k = 0;                // embedding dimension, 0 for LR
  std::size_t d = 1;                // maximum interaction order
  std::vector<std::size_t> ranks;   // r_2..r_d for tensorFM kinds, {r} for fwfm-lr
  LinearWeights linear;
  Matrix embeddings;                // m × k
  std::optional<FieldPairWeights> pair_weights;
  std::vector<CPFactorSet> cp;          // cp[ℓ - 2]
  std::vector<TuckerFactorSet> tucker;  // tucker[ℓ - 2]

  std::size_t num_fields() const { return schema.num_fields(); }
  std::span<const double> embedding(std::size_t global) const { return embeddings.row(global); }

  void validate() const;

  bool operator==(const ModelBundle&) const = default;
};

struct ModelConfig {
  ModelKind kind = ModelKind::kTensorFM;
  std::size_t k = 8;
  std::size_t d = 2;
  /// r_2..r_d. A single entry is replicated to every order.
  std::vector<std::size_t> ranks;
  double init_scale = 0.01;
  std::uint64_t seed = 0;
};

/// Embeddings, pair weights, CP factors, Tucker cores and factors ~ N(0, init_scale²);
/// linear weights and bias start at zero. Throws ConfigError on inconsistent settings.
ModelBundle init_model(const FieldSchema& schema, const ModelConfig& config);

/// Number of scalar parameters held by the bundle.
std::size_t parameter_count(const ModelBundle& bundle);

/// Rank-r FwFM from a dense one via truncated SVD of ½S: U = U'D, V = V'.
/// Exact (up to rounding) when rank equals rank(S).
ModelBundle lowrank_from_dense(const ModelBundle& fwfm, std::size_t rank);

/// Interaction tensor S^[ℓ] such that the model's order-ℓ term equals
/// Σ_{i_1..i_ℓ} S_{i_1..i_ℓ} ⟨a_{i_1}, ..., a_{i_ℓ}⟩ over all ordered field tuples.
DenseTensor interaction_tensor(const ModelBundle& bundle, std::size_t order,
                               std::size_t cap = kDefaultTensorCap);

}  // namespace tfm
