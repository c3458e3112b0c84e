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

namespace tfm {

/// Entry cap for anything that materializes an n^ℓ tensor.
inline constexpr std::size_t kDefaultTensorCap = std::size_t{1} << 24;

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  bool empty() const { return data.empty(); }

  bool operator==(const Matrix&) const = default;
};

Matrix transpose(const Matrix& m);

/// Dense tensor, row-major (last index varies fastest).
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<std::size_t> shape, double fill = 0.0);

  std::size_t order() const { return shape_.size(); }
  std::span<const std::size_t> shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::size_t linear_index(std::span<const std::size_t> index) const;
  double& at(std::span<const std::size_t> index) { return data_[linear_index(index)]; }
  double at(std::span<const std::size_t> index) const { return data_[linear_index(index)]; }

  bool operator==(const DenseTensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Advances a row-major multi-index; returns false after the last one.
bool next_index(std::vector<std::size_t>& index, std::span<const std::size_t> shape);

/// Product of `shape`, throwing CapacityError above `cap`.
std::size_t checked_volume(std::span<const std::size_t> shape, std::size_t cap);

/// Order-ℓ interaction tensor in CP form: W = Σ_j u_{1,j} ⊗ ... ⊗ u_{ℓ,j}.
/// factors[b] is n × rank; column j holds u_{b+1,j}.
struct CPFactorSet {
  std::size_t order = 0;
  std::size_t rank = 0;
  std::vector<Matrix> factors;

  bool operator==(const CPFactorSet&) const = default;
};

/// Order-ℓ tensor in Tucker form: core (r_1 × ... × r_ℓ) with one n × r_b factor per mode.
struct TuckerFactorSet {
  std::size_t order = 0;
  std::vector<std::size_t> ranks;
  DenseTensor core;
  std::vector<Matrix> factors;

  bool operator==(const TuckerFactorSet&) const = default;
};

DenseTensor materialize(const CPFactorSet& set, std::size_t cap = kDefaultTensorCap);
DenseTensor reconstruct(const TuckerFactorSet& set, std::size_t cap = kDefaultTensorCap);

/// T ×_mode M where M is (new_dim × shape[mode]).
DenseTensor mode_product(const DenseTensor& tensor, const Matrix& m, std::size_t mode);

/// Average over all index permutations; requires a cubical tensor.
DenseTensor symmetrize(const DenseTensor& tensor);

/// Truncated higher-order SVD: factor b holds the leading ranks[b] left singular
/// vectors of the mode-b unfolding, the core is the tensor projected onto them.
TuckerFactorSet hosvd(const DenseTensor& tensor, std::span<const std::size_t> ranks);

}  // namespace tfm
