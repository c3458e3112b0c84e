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
#include <vector>

#include "tensorfm/model.hpp"
#include "tensorfm/schema.hpp"

namespace tfm {

// Per-instance embedding matrix A_x (k × n). Column j is values[j] times the
// embedding of field j's active feature; row h (ā_h) is stored contiguously.
class EmbedView {
 public:
  void gather(const ModelBundle& bundle, const Instance& instance);

  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  double operator()(std::size_t h, std::size_t j) const { return data_[h * n_ + j]; }
  std::span<const double> row(std::size_t h) const { return {data_.data() + h * n_, n_}; }
  /// Global feature index of field j's active feature.
  std::size_t feature(std::size_t j) const { return features_[j]; }

 private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
  std::vector<std::size_t> features_;
};

// Interaction terms evaluated on a gathered view. None of them include the linear block.

/// ½(‖Σ_j a_j‖² − Σ_j ‖a_j‖²), O(nk).
double fm_term(const EmbedView& view);
/// ½ Σ_{i,j} S_ij ⟨a_i, a_j⟩, O(n²k).
double fwfm_term(const EmbedView& view, const FieldPairWeights& pairs);
/// ⟨A_x V, A_x U⟩_F = Σ_{i,j} (U Vᵀ)_ij ⟨a_i, a_j⟩, O(rnk).
double lowrank_term(const EmbedView& view, const Matrix& u, const Matrix& v);
/// Σ_{t=2..degree} ANOVA kernel of degree t over fields, O(degree·n·k).
double anova_term(const EmbedView& view, std::size_t degree);
/// Σ_h Σ_j Π_b ⟨u_{b,j}, ā_h⟩, O(ℓ·r·n·k). When `dots` is given it receives the
/// dot products laid out as [b][h][j] (ℓ·k·r entries).
double cp_term(const EmbedView& view, const CPFactorSet& set, std::vector<double>* dots = nullptr);
/// Σ_idx core[idx] Σ_h Π_b G_b[idx_b, h] with G_b = U_bᵀ A_xᵀ. When `projections`
/// is given it receives G laid out as [b][c][h] (Σ_b r_b·k entries).
double tucker_term(const EmbedView& view, const TuckerFactorSet& set,
                   std::vector<double>* projections = nullptr);

// Full predictors (linear block included).
double score_linear(const ModelBundle& bundle, const Instance& instance);
double score_fm(const ModelBundle& bundle, const Instance& instance);
double score_fwfm_dense(const ModelBundle& bundle, const Instance& instance);
/// Uses the bundle's order-2 CP set as (U, V).
double score_fwfm_lowrank(const ModelBundle& bundle, const Instance& instance);
double score_hofm(const ModelBundle& bundle, const Instance& instance, std::size_t degree);
double score_tensorfm_cp(const ModelBundle& bundle, const Instance& instance);
double score_tensorfm_tucker(const ModelBundle& bundle, const Instance& instance);

/// Literal evaluation of f_lin(x) + Σ_ℓ Σ_{i_1..i_ℓ} S^[ℓ] ⟨a_{i_1},...,a_{i_ℓ}⟩ over all n^ℓ
/// ordered field tuples with materialized interaction tensors. Reference only.
double score_naive_oracle(const ModelBundle& bundle, const Instance& instance,
                          std::size_t cap = kDefaultTensorCap);
/// Same, with caller-supplied tensors (tensors[ℓ-2] = S^[ℓ]).
double score_naive_oracle(const ModelBundle& bundle, const Instance& instance,
                          std::span<const DenseTensor> tensors);

// Values retained from a forward pass for the backward pass.
struct ForwardCache {
  EmbedView view;
  std::vector<std::vector<double>> cp_dots;        // per CP set, [b][h][j]
  std::vector<std::vector<double>> tucker_proj;    // per Tucker set, [b][c][h]
  double score = 0.0;
  const ModelBundle* bundle = nullptr;
  const Instance* instance = nullptr;
};

/// Kind-appropriate score, filling `cache` for backward().
double forward(const ModelBundle& bundle, const Instance& instance, ForwardCache& cache);

/// Kind-appropriate score. Thread-safe; uses a thread-local scratch cache.
double score(const ModelBundle& bundle, const Instance& instance);

/// Numerically stable logistic function.
double sigmoid(double x);
double predict_proba(const ModelBundle& bundle, const Instance& instance);

/// Scores every instance of `data`, splitting the work over `threads` workers (0 = default).
std::vector<double> score_all(const ModelBundle& bundle, const Dataset& data, std::size_t threads = 0);

}  // namespace tfm
