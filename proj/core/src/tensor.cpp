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

#include "tensorfm/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <string>

#include "tensorfm/error.hpp"

namespace tfm {

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) t(c, r) = m(r, c);
  }
  return t;
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, double fill) : shape_(std::move(shape)) {
  std::size_t volume = 1;
  for (std::size_t s : shape_) volume *= s;
  data_.assign(volume, fill);
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> index) const {
  std::size_t linear = 0;
  for (std::size_t b = 0; b < shape_.size(); ++b) linear = linear * shape_[b] + index[b];
  return linear;
}

bool next_index(std::vector<std::size_t>& index, std::span<const std::size_t> shape) {
  for (std::size_t b = index.size(); b-- > 0;) {
    if (++index[b] < shape[b]) return true;
    index[b] = 0;
  }
  return false;
}

std::size_t checked_volume(std::span<const std::size_t> shape, std::size_t cap) {
  std::size_t volume = 1;
  for (std::size_t s : shape) {
    if (s != 0 && volume > cap / s) {
      throw CapacityError("tensor volume exceeds cap of " + std::to_string(cap) + " entries");
    }
    volume *= s;
  }
  if (volume > cap) throw CapacityError("tensor volume exceeds cap of " + std::to_string(cap) + " entries");
  return volume;
}

DenseTensor materialize(const CPFactorSet& set, std::size_t cap) {
  if (set.factors.size() != set.order || set.order == 0) {
    throw ShapeError("CP set of order " + std::to_string(set.order) + " has " +
                     std::to_string(set.factors.size()) + " factors");
  }
  const std::size_t n = set.factors[0].rows;
  std::vector<std::size_t> shape(set.order, n);
  checked_volume(shape, cap);
  DenseTensor out(shape);
  std::vector<std::size_t> index(set.order, 0);
  std::size_t linear = 0;
  do {
    double sum = 0.0;
    for (std::size_t j = 0; j < set.rank; ++j) {
      double prod = 1.0;
      for (std::size_t b = 0; b < set.order; ++b) prod *= set.factors[b](index[b], j);
      sum += prod;
    }
    out.data()[linear++] = sum;
  } while (next_index(index, shape));
  return out;
}

DenseTensor mode_product(const DenseTensor& tensor, const Matrix& m, std::size_t mode) {
  const auto shape = tensor.shape();
  if (mode >= shape.size() || m.cols != shape[mode]) {
    throw ShapeError("mode product: matrix has " + std::to_string(m.cols) +
                     " columns, mode size is " + std::to_string(mode < shape.size() ? shape[mode] : 0));
  }
  std::vector<std::size_t> out_shape(shape.begin(), shape.end());
  out_shape[mode] = m.rows;
  DenseTensor out(out_shape);
  // View the tensor as (outer, mode, inner).
  std::size_t outer = 1, inner = 1;
  for (std::size_t b = 0; b < mode; ++b) outer *= shape[b];
  for (std::size_t b = mode + 1; b < shape.size(); ++b) inner *= shape[b];
  const std::size_t old_dim = shape[mode];
  const std::size_t new_dim = m.rows;
  auto src = tensor.data();
  auto dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < new_dim; ++r) {
      double* dst_row = dst.data() + (o * new_dim + r) * inner;
      for (std::size_t c = 0; c < old_dim; ++c) {
        const double coef = m(r, c);
        if (coef == 0.0) continue;
        const double* src_row = src.data() + (o * old_dim + c) * inner;
        for (std::size_t i = 0; i < inner; ++i) dst_row[i] += coef * src_row[i];
      }
    }
  }
  return out;
}

DenseTensor reconstruct(const TuckerFactorSet& set, std::size_t cap) {
  if (set.factors.size() != set.order || set.ranks.size() != set.order ||
      set.core.order() != set.order) {
    throw ShapeError("Tucker set of order " + std::to_string(set.order) + " is inconsistent");
  }
  const std::size_t n = set.order ? set.factors[0].rows : 0;
  std::vector<std::size_t> full(set.order, n);
  checked_volume(full, cap);
  DenseTensor out = set.core;
  for (std::size_t b = 0; b < set.order; ++b) out = mode_product(out, set.factors[b], b);
  return out;
}

DenseTensor symmetrize(const DenseTensor& tensor) {
  const auto shape = tensor.shape();
  const std::size_t order = shape.size();
  if (order == 0) return tensor;
  for (std::size_t s : shape) {
    if (s != shape[0]) throw ShapeError("symmetrize needs a cubical tensor");
  }
  DenseTensor out(std::vector<std::size_t>(shape.begin(), shape.end()));
  std::vector<std::size_t> index(order, 0), perm(order), permuted(order);
  std::size_t linear = 0;
  do {
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    std::size_t count = 0;
    do {
      for (std::size_t b = 0; b < order; ++b) permuted[b] = index[perm[b]];
      sum += tensor.at(permuted);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.data()[linear++] = sum / static_cast<double>(count);
  } while (next_index(index, shape));
  return out;
}

TuckerFactorSet hosvd(const DenseTensor& tensor, std::span<const std::size_t> ranks) {
  const auto shape = tensor.shape();
  const std::size_t order = shape.size();
  if (ranks.size() != order) throw ShapeError("hosvd: one rank per mode required");
  TuckerFactorSet set;
  set.order = order;
  set.ranks.assign(ranks.begin(), ranks.end());
  for (std::size_t b = 0; b < order; ++b) {
    if (ranks[b] == 0 || ranks[b] > shape[b]) throw ConfigError("hosvd: rank out of range for mode " + std::to_string(b));
    // Mode-b unfolding: rows indexed by i_b, columns by the remaining indices.
    const std::size_t rows = shape[b];
    const std::size_t cols = tensor.size() / rows;
    Eigen::MatrixXd unfolding(rows, cols);
    std::size_t outer = 1, inner = 1;
    for (std::size_t c = 0; c < b; ++c) outer *= shape[c];
    for (std::size_t c = b + 1; c < order; ++c) inner *= shape[c];
    auto data = tensor.data();
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < inner; ++i) {
          unfolding(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(o * inner + i)) =
              data[(o * rows + r) * inner + i];
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unfolding, Eigen::ComputeThinU);
    Matrix factor(rows, ranks[b]);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < ranks[b]; ++c) {
        factor(r, c) = svd.matrixU()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
    set.factors.push_back(std::move(factor));
  }
  DenseTensor core = tensor;
  for (std::size_t b = 0; b < order; ++b) core = mode_product(core, transpose(set.factors[b]), b);
  set.core = std::move(core);
  return set;
}

}  // namespace tfm
