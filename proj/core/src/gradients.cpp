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

#include "tensorfm/gradients.hpp"

#include <cmath>
#include <string>

#include "tensorfm/error.hpp"

namespace tfm {

double bce_loss(double probability, int label) {
  return label ? -std::log(probability) : -std::log1p(-probability);
}

double bce_from_logit(double score, int label) {
  // softplus(s) − y·s with softplus(s) = max(s, 0) + log1p(exp(−|s|))
  return std::max(score, 0.0) + std::log1p(std::exp(-std::abs(score))) - (label ? score : 0.0);
}

GradBundle GradBundle::zeros_like(const ModelBundle& bundle) {
  GradBundle g;
  g.w.assign(bundle.linear.w.size(), 0.0);
  g.embeddings = Matrix(bundle.embeddings.rows, bundle.embeddings.cols);
  if (bundle.pair_weights) g.pair_upper.assign(bundle.pair_weights->values().size(), 0.0);
  g.cp = bundle.cp;
  for (auto& set : g.cp) {
    for (auto& f : set.factors) std::fill(f.data.begin(), f.data.end(), 0.0);
  }
  g.tucker = bundle.tucker;
  for (auto& set : g.tucker) {
    std::fill(set.core.data().begin(), set.core.data().end(), 0.0);
    for (auto& f : set.factors) std::fill(f.data.begin(), f.data.end(), 0.0);
  }
  g.touched_flag_.assign(bundle.linear.w.size(), 0);
  return g;
}

void GradBundle::clear() {
  bias = 0.0;
  const std::size_t k = embeddings.cols;
  for (std::size_t f : touched) {
    w[f] = 0.0;
    if (k) std::fill_n(embeddings.data.begin() + static_cast<std::ptrdiff_t>(f * k), k, 0.0);
    touched_flag_[f] = 0;
  }
  touched.clear();
  std::fill(pair_upper.begin(), pair_upper.end(), 0.0);
  for (auto& set : cp) {
    for (auto& f : set.factors) std::fill(f.data.begin(), f.data.end(), 0.0);
  }
  for (auto& set : tucker) {
    std::fill(set.core.data().begin(), set.core.data().end(), 0.0);
    for (auto& f : set.factors) std::fill(f.data.begin(), f.data.end(), 0.0);
  }
}

void GradBundle::scale(double factor) {
  bias *= factor;
  const std::size_t k = embeddings.cols;
  for (std::size_t f : touched) {
    w[f] *= factor;
    for (std::size_t h = 0; h < k; ++h) embeddings(f, h) *= factor;
  }
  for (double& v : pair_upper) v *= factor;
  for (auto& set : cp) {
    for (auto& f : set.factors) {
      for (double& v : f.data) v *= factor;
    }
  }
  for (auto& set : tucker) {
    for (double& v : set.core.data()) v *= factor;
    for (auto& f : set.factors) {
      for (double& v : f.data) v *= factor;
    }
  }
}

namespace {

// ∂T/∂A for the CP term and accumulation into the factor gradients.
void backward_cp(const EmbedView& view, const CPFactorSet& set, const std::vector<double>& dots,
                 double upstream, CPFactorSet& grad, std::vector<double>& d_view) {
  const std::size_t n = view.n();
  const std::size_t k = view.k();
  const std::size_t r = set.rank;
  const std::size_t order = set.order;
  // others[b][h][j] = Π_{b' ≠ b} dots[b'][h][j], via prefix/suffix products.
  std::vector<double> others(order * k * r);
  std::vector<double> prefix(order + 1), suffix(order + 1);
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t j = 0; j < r; ++j) {
      prefix[0] = 1.0;
      for (std::size_t b = 0; b < order; ++b) prefix[b + 1] = prefix[b] * dots[(b * k + h) * r + j];
      suffix[order] = 1.0;
      for (std::size_t b = order; b-- > 0;) suffix[b] = suffix[b + 1] * dots[(b * k + h) * r + j];
      for (std::size_t b = 0; b < order; ++b) {
        others[(b * k + h) * r + j] = upstream * prefix[b] * suffix[b + 1];
      }
    }
  }
  for (std::size_t b = 0; b < order; ++b) {
    const Matrix& u = set.factors[b];
    Matrix& gu = grad.factors[b];
    for (std::size_t h = 0; h < k; ++h) {
      const double* g = others.data() + (b * k + h) * r;
      const auto row = view.row(h);
      double* dv = d_view.data() + h * n;
      for (std::size_t t = 0; t < n; ++t) {
        const double a = row[t];
        const double* urow = u.data.data() + t * r;
        double* gurow = gu.data.data() + t * r;
        double acc = 0.0;
        for (std::size_t j = 0; j < r; ++j) {
          gurow[j] += g[j] * a;
          acc += g[j] * urow[j];
        }
        dv[t] += acc;
      }
    }
  }
}

std::size_t mode_offset(const TuckerFactorSet& set, std::size_t mode, std::size_t k) {
  std::size_t offset = 0;
  for (std::size_t b = 0; b < mode; ++b) offset += set.ranks[b] * k;
  return offset;
}

void backward_tucker(const EmbedView& view, const TuckerFactorSet& set, const std::vector<double>& proj,
                     double upstream, TuckerFactorSet& grad, std::vector<double>& d_view) {
  const std::size_t n = view.n();
  const std::size_t k = view.k();
  const std::size_t order = set.order;
  std::vector<double> d_proj(proj.size(), 0.0);
  const auto core = set.core.data();
  auto core_grad = grad.core.data();
  std::vector<std::size_t> index(order, 0);
  std::vector<double> prefix(order + 1), suffix(order + 1);
  std::size_t linear = 0;
  do {
    const double c = core[linear];
    double core_acc = 0.0;
    for (std::size_t h = 0; h < k; ++h) {
      prefix[0] = 1.0;
      for (std::size_t b = 0; b < order; ++b) {
        prefix[b + 1] = prefix[b] * proj[mode_offset(set, b, k) + index[b] * k + h];
      }
      suffix[order] = 1.0;
      for (std::size_t b = order; b-- > 0;) {
        suffix[b] = suffix[b + 1] * proj[mode_offset(set, b, k) + index[b] * k + h];
      }
      core_acc += prefix[order];
      for (std::size_t b = 0; b < order; ++b) {
        d_proj[mode_offset(set, b, k) + index[b] * k + h] += upstream * c * prefix[b] * suffix[b + 1];
      }
    }
    core_grad[linear] += upstream * core_acc;
    ++linear;
  } while (next_index(index, set.ranks));

  // G_b[c, h] = Σ_t U_b[t, c] A[h, t]
  for (std::size_t b = 0; b < order; ++b) {
    const std::size_t r = set.ranks[b];
    const Matrix& u = set.factors[b];
    Matrix& gu = grad.factors[b];
    const double* dg = d_proj.data() + mode_offset(set, b, k);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t c = 0; c < r; ++c) {
        double acc_u = 0.0;
        for (std::size_t h = 0; h < k; ++h) {
          acc_u += dg[c * k + h] * view(h, t);
          d_view[h * n + t] += dg[c * k + h] * u(t, c);
        }
        gu(t, c) += acc_u;
      }
    }
  }
}

void backward_anova(const EmbedView& view, std::size_t degree, double upstream, std::vector<double>& d_view) {
  const std::size_t n = view.n();
  std::vector<double> table(degree + 1), excluded(degree + 1);
  for (std::size_t h = 0; h < view.k(); ++h) {
    const auto row = view.row(h);
    std::fill(table.begin(), table.end(), 0.0);
    table[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = std::min(degree, j + 1); t >= 1; --t) table[t] += row[j] * table[t - 1];
    }
    // Kernel without field j: E^t = A^t − x_j E^{t−1}; ∂A^t/∂x_j = E^{t−1}.
    for (std::size_t j = 0; j < n; ++j) {
      excluded[0] = 1.0;
      double grad = 0.0;
      for (std::size_t t = 1; t < degree; ++t) {
        excluded[t] = table[t] - row[j] * excluded[t - 1];
        grad += excluded[t];  // contributes to degree t + 1 ≥ 2
      }
      d_view[h * n + j] += upstream * grad;
    }
  }
}

}  // namespace

void backward(const ModelBundle& bundle, const Instance& instance, const ForwardCache& cache,
              double upstream, GradBundle& grads) {
  if (cache.bundle != &bundle || cache.instance != &instance) {
    throw ConfigError("backward called without a forward cache for this instance");
  }
  const std::size_t n = bundle.num_fields();
  grads.bias += upstream;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t f = bundle.schema.global_index(j, instance.active[j]);
    grads.mark(f);
    grads.w[f] += upstream * instance.values[j];
  }
  if (bundle.kind == ModelKind::kLR) return;

  const EmbedView& view = cache.view;
  const std::size_t k = view.k();
  thread_local std::vector<double> d_view;
  d_view.assign(k * n, 0.0);

  switch (bundle.kind) {
    case ModelKind::kLR:
      break;
    case ModelKind::kFM:
      for (std::size_t h = 0; h < k; ++h) {
        double sum = 0.0;
        for (double a : view.row(h)) sum += a;
        for (std::size_t t = 0; t < n; ++t) d_view[h * n + t] += upstream * (sum - view(h, t));
      }
      break;
    case ModelKind::kFwFM: {
      const FieldPairWeights& s = *bundle.pair_weights;
      std::size_t slot = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++slot) {
          double dot = 0.0;
          const double sij = s(i, j);
          for (std::size_t h = 0; h < k; ++h) {
            dot += view(h, i) * view(h, j);
            d_view[h * n + i] += upstream * sij * view(h, j);
            d_view[h * n + j] += upstream * sij * view(h, i);
          }
          grads.pair_upper[slot] += upstream * dot;
        }
      }
      break;
    }
    case ModelKind::kHOFM:
      backward_anova(view, bundle.d, upstream, d_view);
      break;
    case ModelKind::kFwFMLowRank:
    case ModelKind::kTensorFM:
      if (cache.cp_dots.size() != bundle.cp.size()) throw ConfigError("forward cache lacks CP dot products");
      for (std::size_t s = 0; s < bundle.cp.size(); ++s) {
        backward_cp(view, bundle.cp[s], cache.cp_dots[s], upstream, grads.cp[s], d_view);
      }
      break;
    case ModelKind::kTensorFMTucker:
      if (cache.tucker_proj.size() != bundle.tucker.size()) throw ConfigError("forward cache lacks Tucker projections");
      for (std::size_t s = 0; s < bundle.tucker.size(); ++s) {
        backward_tucker(view, bundle.tucker[s], cache.tucker_proj[s], upstream, grads.tucker[s], d_view);
      }
      break;
  }

  // A[h, t] = values[t] · V[feature_t, h]
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t f = view.feature(t);
    const double scale = instance.values[t];
    double* row = grads.embeddings.data.data() + f * k;
    for (std::size_t h = 0; h < k; ++h) row[h] += d_view[h * n + t] * scale;
  }
}

GradBundle backward(const ModelBundle& bundle, const Instance& instance, double upstream) {
  ForwardCache cache;
  forward(bundle, instance, cache);
  GradBundle grads = GradBundle::zeros_like(bundle);
  backward(bundle, instance, cache, upstream, grads);
  return grads;
}

std::vector<BlockRef> block_refs(ModelBundle& bundle, const GradBundle& grads) {
  std::vector<BlockRef> refs;
  refs.push_back({"linear.b", BlockGroup::kBias, std::span<double>(&bundle.linear.b, 1),
                  std::span<const double>(&grads.bias, 1), 0});
  refs.push_back({"linear.w", BlockGroup::kLinear, bundle.linear.w, grads.w, 1});
  if (!bundle.embeddings.empty()) {
    refs.push_back({"embeddings", BlockGroup::kEmbedding, bundle.embeddings.data, grads.embeddings.data,
                    bundle.embeddings.cols});
  }
  if (bundle.pair_weights) {
    refs.push_back({"fwfm.S.upper", BlockGroup::kInteraction, bundle.pair_weights->values(), grads.pair_upper, 0});
  }
  for (std::size_t s = 0; s < bundle.cp.size(); ++s) {
    auto& set = bundle.cp[s];
    for (std::size_t b = 0; b < set.order; ++b) {
      refs.push_back({"cp." + std::to_string(set.order) + ".factor." + std::to_string(b + 1),
                      BlockGroup::kInteraction, set.factors[b].data, grads.cp[s].factors[b].data, 0});
    }
  }
  for (std::size_t s = 0; s < bundle.tucker.size(); ++s) {
    auto& set = bundle.tucker[s];
    const std::string prefix = "tucker." + std::to_string(set.order);
    refs.push_back({prefix + ".core", BlockGroup::kInteraction, set.core.data(), grads.tucker[s].core.data(), 0});
    for (std::size_t b = 0; b < set.order; ++b) {
      refs.push_back({prefix + ".factor." + std::to_string(b + 1), BlockGroup::kInteraction, set.factors[b].data,
                      grads.tucker[s].factors[b].data, 0});
    }
  }
  return refs;
}

}  // namespace tfm
