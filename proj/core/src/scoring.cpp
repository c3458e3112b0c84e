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

#include "tensorfm/scoring.hpp"

#include <cmath>
#include <string>

#include "tensorfm/error.hpp"
#include "tensorfm/parallel.hpp"

namespace tfm {

void EmbedView::gather(const ModelBundle& bundle, const Instance& instance) {
  n_ = bundle.num_fields();
  k_ = bundle.k;
  if (instance.active.size() != n_ || instance.values.size() != n_) {
    throw SchemaError("instance has " + std::to_string(instance.active.size()) +
                      " fields, model expects " + std::to_string(n_));
  }
  data_.resize(k_ * n_);
  features_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (instance.active[j] >= bundle.schema.cardinality(j)) {
      throw SchemaError("field " + std::to_string(j) + ": feature index out of range");
    }
    const std::size_t global = bundle.schema.global_index(j, instance.active[j]);
    features_[j] = global;
    if (k_ == 0) continue;
    const double scale = instance.values[j];
    const double* emb = bundle.embeddings.data.data() + global * k_;
    for (std::size_t h = 0; h < k_; ++h) data_[h * n_ + j] = scale * emb[h];
  }
}

double fm_term(const EmbedView& view) {
  double total = 0.0;
  for (std::size_t h = 0; h < view.k(); ++h) {
    double sum = 0.0, sq = 0.0;
    for (double a : view.row(h)) {
      sum += a;
      sq += a * a;
    }
    total += sum * sum - sq;
  }
  return 0.5 * total;
}

double fwfm_term(const EmbedView& view, const FieldPairWeights& pairs) {
  const std::size_t n = view.n();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t h = 0; h < view.k(); ++h) dot += view(h, i) * view(h, j);
      total += pairs(i, j) * dot;
    }
  }
  // ½ Σ_{i≠j} S_ij ⟨a_i,a_j⟩ == Σ_{i<j} S_ij ⟨a_i,a_j⟩ for symmetric S.
  return total;
}

double lowrank_term(const EmbedView& view, const Matrix& u, const Matrix& v) {
  const std::size_t n = view.n();
  const std::size_t r = u.cols;
  if (u.rows != n || v.rows != n || v.cols != r) throw ShapeError("low-rank factors do not match the view");
  std::vector<double> au(r), av(r);
  double total = 0.0;
  for (std::size_t h = 0; h < view.k(); ++h) {
    std::fill(au.begin(), au.end(), 0.0);
    std::fill(av.begin(), av.end(), 0.0);
    const auto row = view.row(h);
    for (std::size_t t = 0; t < n; ++t) {
      const double a = row[t];
      const double* urow = u.data.data() + t * r;
      const double* vrow = v.data.data() + t * r;
      for (std::size_t c = 0; c < r; ++c) {
        au[c] += a * urow[c];
        av[c] += a * vrow[c];
      }
    }
    for (std::size_t c = 0; c < r; ++c) total += av[c] * au[c];
  }
  return total;
}

double anova_term(const EmbedView& view, std::size_t degree) {
  const std::size_t n = view.n();
  if (degree < 2 || degree > n) {
    throw ConfigError("ANOVA degree " + std::to_string(degree) + " outside [2, n=" + std::to_string(n) + "]");
  }
  std::vector<double> table(degree + 1);
  double total = 0.0;
  for (std::size_t h = 0; h < view.k(); ++h) {
    std::fill(table.begin(), table.end(), 0.0);
    table[0] = 1.0;
    const auto row = view.row(h);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t top = std::min(degree, j + 1);
      for (std::size_t t = top; t >= 1; --t) table[t] += row[j] * table[t - 1];
    }
    for (std::size_t t = 2; t <= degree; ++t) total += table[t];
  }
  return total;
}

double cp_term(const EmbedView& view, const CPFactorSet& set, std::vector<double>* dots) {
  const std::size_t n = view.n();
  const std::size_t k = view.k();
  const std::size_t r = set.rank;
  const std::size_t order = set.order;
  thread_local std::vector<double> scratch;
  std::vector<double>& d = dots ? *dots : scratch;
  d.assign(order * k * r, 0.0);
  for (std::size_t b = 0; b < order; ++b) {
    const Matrix& u = set.factors[b];
    for (std::size_t h = 0; h < k; ++h) {
      double* out = d.data() + (b * k + h) * r;
      const auto row = view.row(h);
      for (std::size_t t = 0; t < n; ++t) {
        const double a = row[t];
        const double* urow = u.data.data() + t * r;
        for (std::size_t j = 0; j < r; ++j) out[j] += a * urow[j];
      }
    }
  }
  double total = 0.0;
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t j = 0; j < r; ++j) {
      double prod = d[h * r + j];
      for (std::size_t b = 1; b < order; ++b) prod *= d[(b * k + h) * r + j];
      total += prod;
    }
  }
  return total;
}

namespace {

std::size_t projection_offset(const TuckerFactorSet& set, std::size_t mode, std::size_t k) {
  std::size_t offset = 0;
  for (std::size_t b = 0; b < mode; ++b) offset += set.ranks[b] * k;
  return offset;
}

}  // namespace

double tucker_term(const EmbedView& view, const TuckerFactorSet& set, std::vector<double>* projections) {
  const std::size_t n = view.n();
  const std::size_t k = view.k();
  const std::size_t order = set.order;
  thread_local std::vector<double> scratch;
  std::vector<double>& g = projections ? *projections : scratch;
  g.assign(projection_offset(set, order, k), 0.0);
  // G_b[c, h] = Σ_t U_b[t, c] A[h, t]
  for (std::size_t b = 0; b < order; ++b) {
    const Matrix& u = set.factors[b];
    const std::size_t r = set.ranks[b];
    double* gb = g.data() + projection_offset(set, b, k);
    for (std::size_t h = 0; h < k; ++h) {
      const auto row = view.row(h);
      for (std::size_t t = 0; t < n; ++t) {
        const double a = row[t];
        const double* urow = u.data.data() + t * r;
        for (std::size_t c = 0; c < r; ++c) gb[c * k + h] += a * urow[c];
      }
    }
  }
  // Contract the core one mode at a time (last mode first) for every h.
  thread_local std::vector<double> work, next;
  double total = 0.0;
  const auto core = set.core.data();
  for (std::size_t h = 0; h < k; ++h) {
    work.assign(core.begin(), core.end());
    std::size_t size = work.size();
    for (std::size_t b = order; b-- > 0;) {
      const std::size_t r = set.ranks[b];
      const double* gb = g.data() + projection_offset(set, b, k);
      const std::size_t outer = size / r;
      next.assign(outer, 0.0);
      for (std::size_t o = 0; o < outer; ++o) {
        double acc = 0.0;
        for (std::size_t c = 0; c < r; ++c) acc += work[o * r + c] * gb[c * k + h];
        next[o] = acc;
      }
      work.swap(next);
      size = outer;
    }
    total += work[0];
  }
  return total;
}

double score_linear(const ModelBundle& bundle, const Instance& instance) {
  const std::size_t n = bundle.num_fields();
  if (instance.active.size() != n || instance.values.size() != n) {
    throw SchemaError("instance does not match the model schema");
  }
  double s = bundle.linear.b;
  for (std::size_t j = 0; j < n; ++j) {
    if (instance.active[j] >= bundle.schema.cardinality(j)) {
      throw SchemaError("field " + std::to_string(j) + ": feature index out of range");
    }
    s += instance.values[j] * bundle.linear.w[bundle.schema.global_index(j, instance.active[j])];
  }
  return s;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

thread_local ForwardCache tls_cache;

}  // namespace

double score_fm(const ModelBundle& bundle, const Instance& instance) {
  require(uses_embeddings(bundle.kind), "score_fm needs embeddings");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  return score_linear(bundle, instance) + fm_term(view);
}

double score_fwfm_dense(const ModelBundle& bundle, const Instance& instance) {
  require(bundle.pair_weights.has_value(), "score_fwfm_dense needs field-pair weights");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  return score_linear(bundle, instance) + fwfm_term(view, *bundle.pair_weights);
}

double score_fwfm_lowrank(const ModelBundle& bundle, const Instance& instance) {
  require(!bundle.cp.empty() && bundle.cp[0].order == 2, "score_fwfm_lowrank needs an order-2 factor pair");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  const auto& set = bundle.cp[0];
  return score_linear(bundle, instance) + lowrank_term(view, set.factors[0], set.factors[1]);
}

double score_hofm(const ModelBundle& bundle, const Instance& instance, std::size_t degree) {
  require(uses_embeddings(bundle.kind), "score_hofm needs embeddings");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  return score_linear(bundle, instance) + anova_term(view, degree);
}

double score_tensorfm_cp(const ModelBundle& bundle, const Instance& instance) {
  require(!bundle.cp.empty(), "score_tensorfm_cp needs CP factor sets");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  double s = score_linear(bundle, instance);
  for (const auto& set : bundle.cp) s += cp_term(view, set);
  return s;
}

double score_tensorfm_tucker(const ModelBundle& bundle, const Instance& instance) {
  require(!bundle.tucker.empty(), "score_tensorfm_tucker needs Tucker factor sets");
  EmbedView& view = tls_cache.view;
  view.gather(bundle, instance);
  double s = score_linear(bundle, instance);
  for (const auto& set : bundle.tucker) s += tucker_term(view, set);
  return s;
}

double score_naive_oracle(const ModelBundle& bundle, const Instance& instance,
                          std::span<const DenseTensor> tensors) {
  const std::size_t n = bundle.num_fields();
  double s = bundle.linear.b;
  std::vector<std::size_t> global(n);
  for (std::size_t j = 0; j < n; ++j) {
    global[j] = bundle.schema.global_index(j, instance.active[j]);
    s += instance.values[j] * bundle.linear.w[global[j]];
  }
  const std::size_t k = bundle.k;
  auto column = [&](std::size_t field, std::size_t h) {
    return instance.values[field] * bundle.embeddings(global[field], h);
  };
  for (const DenseTensor& tensor : tensors) {
    const auto shape = tensor.shape();
    std::vector<std::size_t> index(shape.size(), 0);
    std::size_t linear = 0;
    do {
      const double weight = tensor.data()[linear++];
      double inner = 0.0;  // ℓ-way inner product of the indexed columns
      for (std::size_t h = 0; h < k; ++h) {
        double prod = 1.0;
        for (std::size_t b = 0; b < index.size(); ++b) prod *= column(index[b], h);
        inner += prod;
      }
      s += weight * inner;
    } while (next_index(index, shape));
  }
  return s;
}

double score_naive_oracle(const ModelBundle& bundle, const Instance& instance, std::size_t cap) {
  std::vector<DenseTensor> tensors;
  if (bundle.kind != ModelKind::kLR) {
    for (std::size_t order = 2; order <= bundle.d; ++order) {
      tensors.push_back(interaction_tensor(bundle, order, cap));
    }
  }
  return score_naive_oracle(bundle, instance, tensors);
}

double forward(const ModelBundle& bundle, const Instance& instance, ForwardCache& cache) {
  cache.bundle = &bundle;
  cache.instance = &instance;
  double s = score_linear(bundle, instance);
  if (bundle.kind != ModelKind::kLR) cache.view.gather(bundle, instance);
  switch (bundle.kind) {
    case ModelKind::kLR:
      break;
    case ModelKind::kFM:
      s += fm_term(cache.view);
      break;
    case ModelKind::kFwFM:
      s += fwfm_term(cache.view, *bundle.pair_weights);
      break;
    case ModelKind::kHOFM:
      s += anova_term(cache.view, bundle.d);
      break;
    case ModelKind::kFwFMLowRank:
    case ModelKind::kTensorFM:
      cache.cp_dots.resize(bundle.cp.size());
      for (std::size_t i = 0; i < bundle.cp.size(); ++i) s += cp_term(cache.view, bundle.cp[i], &cache.cp_dots[i]);
      break;
    case ModelKind::kTensorFMTucker:
      cache.tucker_proj.resize(bundle.tucker.size());
      for (std::size_t i = 0; i < bundle.tucker.size(); ++i) {
        s += tucker_term(cache.view, bundle.tucker[i], &cache.tucker_proj[i]);
      }
      break;
  }
  cache.score = s;
  return s;
}

double score(const ModelBundle& bundle, const Instance& instance) { return forward(bundle, instance, tls_cache); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double predict_proba(const ModelBundle& bundle, const Instance& instance) {
  return sigmoid(score(bundle, instance));
}

std::vector<double> score_all(const ModelBundle& bundle, const Dataset& data, std::size_t threads) {
  std::vector<double> scores(data.size());
  parallel_for(data.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) scores[i] = score(bundle, data.instances[i]);
  });
  return scores;
}

}  // namespace tfm
