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

#include "tensorfm/model.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>

#include "tensorfm/error.hpp"

namespace tfm {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 7> kKindNames{{
    {ModelKind::kLR, "lr"},
    {ModelKind::kFM, "fm"},
    {ModelKind::kFwFM, "fwfm"},
    {ModelKind::kFwFMLowRank, "fwfm-lr"},
    {ModelKind::kHOFM, "hofm"},
    {ModelKind::kTensorFM, "tensorfm"},
    {ModelKind::kTensorFMTucker, "tensorfm-tucker"},
}};

void check_finite(std::span<const double> values, const std::string& block) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ShapeError("block " + block + " holds a non-finite value");
  }
}

void check_matrix(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& block) {
  if (m.rows != rows || m.cols != cols || m.data.size() != rows * cols) {
    throw ShapeError("block " + block + " has shape " + std::to_string(m.rows) + "x" +
                     std::to_string(m.cols) + ", expected " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  check_finite(m.data, block);
}

}  // namespace

std::string_view kind_name(ModelKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ModelKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

bool uses_embeddings(ModelKind kind) { return kind != ModelKind::kLR; }

Matrix FieldPairWeights::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

void ModelBundle::validate() const {
  const std::size_t n = schema.num_fields();
  const std::size_t m = schema.num_features();
  if (n == 0) throw ShapeError("model has an empty schema");
  if (linear.w.size() != m) {
    throw ShapeError("block linear.w has length " + std::to_string(linear.w.size()) +
                     ", expected " + std::to_string(m));
  }
  check_finite(linear.w, "linear.w");
  check_finite(std::span<const double>(&linear.b, 1), "linear.b");

  const bool want_embeddings = uses_embeddings(kind);
  if (want_embeddings) {
    if (k == 0) throw ShapeError("embedding dimension must be positive");
    check_matrix(embeddings, m, k, "embeddings");
  } else if (!embeddings.empty()) {
    throw ShapeError("block embeddings present for kind " + std::string(kind_name(kind)));
  }

  const bool want_pairs = kind == ModelKind::kFwFM;
  if (want_pairs != pair_weights.has_value()) {
    throw ShapeError(std::string("block fwfm.S ") + (want_pairs ? "missing" : "unexpected"));
  }
  if (pair_weights) {
    if (pair_weights->size() != n || pair_weights->values().size() != n * (n - 1) / 2) {
      throw ShapeError("block fwfm.S has the wrong size");
    }
    check_finite(pair_weights->values(), "fwfm.S");
  }

  const bool higher = kind == ModelKind::kHOFM || kind == ModelKind::kTensorFM ||
                      kind == ModelKind::kTensorFMTucker;
  if (higher && (d < 2 || d > n)) {
    throw ShapeError("order d=" + std::to_string(d) + " outside [2, n=" + std::to_string(n) + "]");
  }

  const bool want_cp = kind == ModelKind::kTensorFM || kind == ModelKind::kFwFMLowRank;
  const bool want_tucker = kind == ModelKind::kTensorFMTucker;
  const std::size_t expected_sets = kind == ModelKind::kFwFMLowRank ? 1 : (d >= 2 ? d - 1 : 0);
  if (want_cp || want_tucker) {
    if (ranks.size() != expected_sets) {
      throw ShapeError("rank vector has " + std::to_string(ranks.size()) + " entries, expected " +
                       std::to_string(expected_sets));
    }
    for (std::size_t r : ranks) {
      if (r < 1 || r > n) throw ShapeError("rank " + std::to_string(r) + " outside [1, n]");
    }
  }
  if (want_cp) {
    if (cp.size() != expected_sets) throw ShapeError("wrong number of CP sets");
    for (std::size_t s = 0; s < cp.size(); ++s) {
      const auto& set = cp[s];
      const std::size_t order = s + 2;
      const std::string prefix = "cp." + std::to_string(order);
      if (set.order != order || set.rank != ranks[s] || set.factors.size() != order) {
        throw ShapeError("block " + prefix + " has inconsistent order/rank");
      }
      for (std::size_t b = 0; b < order; ++b) {
        check_matrix(set.factors[b], n, set.rank, prefix + ".factor." + std::to_string(b + 1));
      }
    }
  } else if (!cp.empty()) {
    throw ShapeError("CP blocks present for kind " + std::string(kind_name(kind)));
  }
  if (want_tucker) {
    if (tucker.size() != expected_sets) throw ShapeError("wrong number of Tucker sets");
    for (std::size_t s = 0; s < tucker.size(); ++s) {
      const auto& set = tucker[s];
      const std::size_t order = s + 2;
      const std::string prefix = "tucker." + std::to_string(order);
      if (set.order != order || set.ranks.size() != order || set.factors.size() != order) {
        throw ShapeError("block " + prefix + " has inconsistent order");
      }
      auto core_shape = set.core.shape();
      if (!std::equal(core_shape.begin(), core_shape.end(), set.ranks.begin(), set.ranks.end())) {
        throw ShapeError("block " + prefix + ".core shape does not match ranks");
      }
      check_finite(set.core.data(), prefix + ".core");
      for (std::size_t b = 0; b < order; ++b) {
        check_matrix(set.factors[b], n, set.ranks[b], prefix + ".factor." + std::to_string(b + 1));
      }
    }
  } else if (!tucker.empty()) {
    throw ShapeError("Tucker blocks present for kind " + std::string(kind_name(kind)));
  }
}

ModelBundle init_model(const FieldSchema& schema, const ModelConfig& config) {
  const std::size_t n = schema.num_fields();
  const std::size_t m = schema.num_features();
  if (n == 0) throw ConfigError("empty schema");
  if (!(config.init_scale >= 0.0) || !std::isfinite(config.init_scale)) {
    throw ConfigError("init_scale must be a finite non-negative number");
  }

  ModelBundle bundle;
  bundle.kind = config.kind;
  bundle.schema = schema;
  bundle.linear.w.assign(m, 0.0);
  bundle.linear.b = 0.0;

  switch (config.kind) {
    case ModelKind::kLR:
      bundle.k = 0;
      bundle.d = 1;
      break;
    case ModelKind::kFM:
    case ModelKind::kFwFM:
    case ModelKind::kFwFMLowRank:
      bundle.d = 2;
      break;
    case ModelKind::kHOFM:
    case ModelKind::kTensorFM:
    case ModelKind::kTensorFMTucker:
      if (config.d < 2 || config.d > n) {
        throw ConfigError("order d=" + std::to_string(config.d) + " must lie in [2, n=" +
                          std::to_string(n) + "]");
      }
      bundle.d = config.d;
      break;
  }
  if (uses_embeddings(config.kind)) {
    if (config.k == 0) throw ConfigError("embedding dimension k must be positive");
    bundle.k = config.k;
  }

  const bool factored = config.kind == ModelKind::kFwFMLowRank || config.kind == ModelKind::kTensorFM ||
                        config.kind == ModelKind::kTensorFMTucker;
  if (factored) {
    const std::size_t sets = config.kind == ModelKind::kFwFMLowRank ? 1 : bundle.d - 1;
    if (config.ranks.size() == 1) {
      bundle.ranks.assign(sets, config.ranks[0]);
    } else if (config.ranks.size() == sets) {
      bundle.ranks = config.ranks;
    } else {
      throw ConfigError("expected 1 or " + std::to_string(sets) + " ranks, got " +
                        std::to_string(config.ranks.size()));
    }
    for (std::size_t r : bundle.ranks) {
      if (r < 1 || r > n) {
        throw ConfigError("rank " + std::to_string(r) + " must lie in [1, n=" + std::to_string(n) + "]");
      }
    }
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto fill = [&](std::span<double> values) {
    for (double& v : values) v = config.init_scale * normal(rng);
  };

  if (uses_embeddings(config.kind)) {
    bundle.embeddings = Matrix(m, bundle.k);
    fill(bundle.embeddings.data);
  }
  if (config.kind == ModelKind::kFwFM) {
    bundle.pair_weights.emplace(n);
    fill(bundle.pair_weights->values());
  }
  if (config.kind == ModelKind::kFwFMLowRank || config.kind == ModelKind::kTensorFM) {
    for (std::size_t s = 0; s < bundle.ranks.size(); ++s) {
      CPFactorSet set;
      set.order = s + 2;
      set.rank = bundle.ranks[s];
      for (std::size_t b = 0; b < set.order; ++b) {
        Matrix factor(n, set.rank);
        fill(factor.data);
        set.factors.push_back(std::move(factor));
      }
      bundle.cp.push_back(std::move(set));
    }
  }
  if (config.kind == ModelKind::kTensorFMTucker) {
    for (std::size_t s = 0; s < bundle.ranks.size(); ++s) {
      TuckerFactorSet set;
      set.order = s + 2;
      set.ranks.assign(set.order, bundle.ranks[s]);
      set.core = DenseTensor(set.ranks);
      fill(set.core.data());
      for (std::size_t b = 0; b < set.order; ++b) {
        Matrix factor(n, set.ranks[b]);
        fill(factor.data);
        set.factors.push_back(std::move(factor));
      }
      bundle.tucker.push_back(std::move(set));
    }
  }
  bundle.validate();
  return bundle;
}

std::size_t parameter_count(const ModelBundle& bundle) {
  std::size_t count = bundle.linear.w.size() + 1;
  count += bundle.embeddings.data.size();
  if (bundle.pair_weights) count += bundle.pair_weights->values().size();
  for (const auto& set : bundle.cp) {
    for (const auto& f : set.factors) count += f.data.size();
  }
  for (const auto& set : bundle.tucker) {
    count += set.core.size();
    for (const auto& f : set.factors) count += f.data.size();
  }
  return count;
}

ModelBundle lowrank_from_dense(const ModelBundle& fwfm, std::size_t rank) {
  if (fwfm.kind != ModelKind::kFwFM || !fwfm.pair_weights) {
    throw ConfigError("lowrank_from_dense needs an fwfm model");
  }
  const std::size_t n = fwfm.num_fields();
  if (rank < 1 || rank > n) throw ConfigError("rank must lie in [1, n]");

  Eigen::MatrixXd half_s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      half_s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.5 * (*fwfm.pair_weights)(i, j);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(half_s, Eigen::ComputeFullU | Eigen::ComputeFullV);

  ModelBundle out;
  out.kind = ModelKind::kFwFMLowRank;
  out.schema = fwfm.schema;
  out.k = fwfm.k;
  out.d = 2;
  out.ranks = {rank};
  out.linear = fwfm.linear;
  out.embeddings = fwfm.embeddings;
  CPFactorSet set;
  set.order = 2;
  set.rank = rank;
  Matrix u(n, rank), v(n, rank);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < rank; ++c) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto cc = static_cast<Eigen::Index>(c);
      u(i, c) = svd.matrixU()(ii, cc) * svd.singularValues()(cc);
      v(i, c) = svd.matrixV()(ii, cc);
    }
  }
  set.factors = {std::move(u), std::move(v)};
  out.cp.push_back(std::move(set));
  out.validate();
  return out;
}

DenseTensor interaction_tensor(const ModelBundle& bundle, std::size_t order, std::size_t cap) {
  const std::size_t n = bundle.num_fields();
  if (order < 2 || order > bundle.d || bundle.kind == ModelKind::kLR) {
    throw ConfigError("model kind " + std::string(kind_name(bundle.kind)) + " has no order-" +
                      std::to_string(order) + " interactions");
  }
  std::vector<std::size_t> shape(order, n);
  checked_volume(shape, cap);
  switch (bundle.kind) {
    case ModelKind::kFM: {
      DenseTensor s(shape, 0.5);
      for (std::size_t i = 0; i < n; ++i) s.data()[i * n + i] = 0.0;
      return s;
    }
    case ModelKind::kFwFM: {
      DenseTensor s(shape);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) s.data()[i * n + j] = 0.5 * (*bundle.pair_weights)(i, j);
      }
      return s;
    }
    case ModelKind::kHOFM: {
      DenseTensor s(shape);
      std::vector<std::size_t> index(order, 0);
      std::size_t linear = 0;
      do {
        bool increasing = true;
        for (std::size_t b = 1; b < order; ++b) increasing = increasing && index[b - 1] < index[b];
        s.data()[linear++] = increasing ? 1.0 : 0.0;
      } while (next_index(index, shape));
      return s;
    }
    case ModelKind::kFwFMLowRank:
    case ModelKind::kTensorFM:
      return materialize(bundle.cp[order - 2], cap);
    case ModelKind::kTensorFMTucker:
      return reconstruct(bundle.tucker[order - 2], cap);
    case ModelKind::kLR:
      break;
  }
  throw ConfigError("unsupported model kind");
}

}  // namespace tfm
