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

#include "tensorfm/interpret.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "tensorfm/error.hpp"
#include "tensorfm/scoring.hpp"
#include "text_util.hpp"

namespace tfm {

std::vector<FieldTuple> field_combinations(std::size_t num_fields, std::size_t order) {
  std::vector<FieldTuple> out;
  if (order == 0 || order > num_fields) return out;
  FieldTuple t(order);
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    std::size_t pos = order;
    while (pos > 0 && t[pos - 1] == num_fields - order + pos - 1) --pos;
    if (pos == 0) break;
    ++t[pos - 1];
    for (std::size_t b = pos; b < order; ++b) t[b] = t[b - 1] + 1;
  }
  return out;
}

std::vector<double> learned_strength(const ModelBundle& bundle, const Dataset& train, std::size_t order,
                                     std::size_t cap) {
  if (train.empty()) throw DataError("learned strength needs a non-empty training set");
  if (!(train.schema == bundle.schema)) throw SchemaError("dataset schema does not match the model schema");
  const DenseTensor s = interaction_tensor(bundle, order, cap);
  const std::size_t n = bundle.num_fields();
  const auto tuples = field_combinations(n, order);

  // |S_π ⟨a⟩| = |S_π| |⟨a⟩| since the inner product is symmetric, so the
  // permutation sum only needs Σ_π |S_π| per tuple.
  std::vector<double> weight(tuples.size(), 0.0);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    FieldTuple perm = tuples[t];
    do {
      weight[t] += std::abs(s.at(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<double> strength(tuples.size(), 0.0);
  EmbedView view;
  std::vector<double> prod;
  for (const Instance& inst : train.instances) {
    view.gather(bundle, inst);
    const std::size_t k = view.k();
    prod.resize(k);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      if (weight[t] == 0.0) continue;
      std::fill(prod.begin(), prod.end(), 1.0);
      for (std::size_t field : tuples[t]) {
        for (std::size_t h = 0; h < k; ++h) prod[h] *= view(h, field);
      }
      strength[t] += std::abs(std::accumulate(prod.begin(), prod.end(), 0.0)) * weight[t];
    }
  }
  for (double& v : strength) v /= static_cast<double>(train.size());
  return strength;
}

double mutual_information(const Dataset& train, std::span<const std::size_t> fields) {
  if (train.empty()) throw DataError("mutual information needs a non-empty training set");
  for (std::size_t f : fields) {
    if (f >= train.schema.num_fields()) throw ConfigError("field index out of range: " + std::to_string(f));
  }
  std::map<std::vector<FeatureIndex>, std::array<std::size_t, 2>> joint;
  std::array<std::size_t, 2> label_counts{0, 0};
  std::vector<FeatureIndex> key(fields.size());
  for (const Instance& inst : train.instances) {
    for (std::size_t b = 0; b < fields.size(); ++b) key[b] = inst.active[fields[b]];
    const int y = inst.label ? 1 : 0;
    joint[key][y] += 1;
    label_counts[y] += 1;
  }
  const double total = static_cast<double>(train.size());
  double mi = 0.0;
  for (const auto& [value, counts] : joint) {
    const double p_value = static_cast<double>(counts[0] + counts[1]) / total;
    for (int y = 0; y < 2; ++y) {
      if (counts[y] == 0) continue;
      const double p_joint = static_cast<double>(counts[y]) / total;
      const double p_label = static_cast<double>(label_counts[y]) / total;
      mi += p_joint * std::log(p_joint / (p_value * p_label));
    }
  }
  return std::max(mi, 0.0);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("pearson inputs differ in length");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, values.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  idx.resize(k);
  return idx;
}

double topk_overlap(std::span<const double> a, std::span<const double> b, std::size_t k) {
  if (a.size() != b.size()) throw ConfigError("top-k overlap inputs differ in length");
  if (k == 0 || k > a.size()) throw ConfigError("top-k size must lie in [1, " + std::to_string(a.size()) + "]");
  auto ta = top_k(a, k);
  auto tb = top_k(b, k);
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  std::vector<std::size_t> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

InteractionReport interaction_report(const ModelBundle& bundle, const Dataset& train, std::size_t order,
                                     const std::vector<std::size_t>& k_list, std::size_t cap) {
  InteractionReport report;
  report.order = order;
  report.tuples = field_combinations(bundle.num_fields(), order);
  if (report.tuples.empty()) throw ConfigError("no field tuples of order " + std::to_string(order));
  report.learned_strength = learned_strength(bundle, train, order, cap);
  report.mutual_info.reserve(report.tuples.size());
  for (const auto& t : report.tuples) report.mutual_info.push_back(mutual_information(train, t));
  report.pearson = pearson(report.learned_strength, report.mutual_info);
  const double total = static_cast<double>(report.tuples.size());
  for (std::size_t k : k_list) {
    k = std::clamp<std::size_t>(k, 1, report.tuples.size());
    const double frac = static_cast<double>(k) / total;
    report.topk_overlap.push_back({k, topk_overlap(report.learned_strength, report.mutual_info, k), frac * frac, frac});
  }
  return report;
}

namespace {

std::string tuple_label(const FieldTuple& t, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t b = 0; b < t.size(); ++b) {
    if (b) out += '-';
    out += t[b] < names.size() ? names[t[b]] : std::to_string(t[b]);
  }
  return out;
}

}  // namespace

void write_interaction_csv(std::ostream& out, const InteractionReport& report, std::size_t limit,
                           const std::vector<std::string>& field_names) {
  const std::size_t rows = limit == 0 ? report.tuples.size() : std::min(limit, report.tuples.size());
  out << "tuple,learned_strength,mutual_info\n";
  std::string line;
  for (std::size_t i : top_k(report.learned_strength, rows)) {
    line = tuple_label(report.tuples[i], field_names);
    line += ',';
    text::append_double(line, report.learned_strength[i]);
    line += ',';
    text::append_double(line, report.mutual_info[i]);
    out << line << '\n';
  }
}

void write_interaction_json(std::ostream& out, const InteractionReport& report) {
  nlohmann::json j;
  j["order"] = report.order;
  j["n_tuples"] = report.tuples.size();
  j["pearson"] = std::isfinite(report.pearson) ? nlohmann::json(report.pearson) : nlohmann::json(nullptr);
  auto curve = nlohmann::json::array();
  for (const auto& p : report.topk_overlap) {
    curve.push_back({{"k", p.k},
                     {"overlap", p.overlap},
                     {"baseline_squared", p.baseline_squared},
                     {"baseline_linear", p.baseline_linear}});
  }
  j["overlap"] = curve;
  out << j.dump(2) << '\n';
}

}  // namespace tfm
