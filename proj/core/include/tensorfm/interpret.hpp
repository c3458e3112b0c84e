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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tensorfm/model.hpp"
#include "tensorfm/schema.hpp"
#include "tensorfm/tensor.hpp"

namespace tfm {

using FieldTuple = std::vector<std::size_t>;

/// All strictly increasing field tuples of the given order, in lexicographic order.
std::vector<FieldTuple> field_combinations(std::size_t num_fields, std::size_t order);

/// Occurrence-weighted mean of |S_π ⟨a_{π_1}, ..., a_{π_ℓ}⟩| over the training
/// instances, summed over every ordering π of each unordered tuple. One value per
/// entry of field_combinations(n, order).
std::vector<double> learned_strength(const ModelBundle& bundle, const Dataset& train, std::size_t order,
                                     std::size_t cap = kDefaultTensorCap);

/// Plug-in mutual information (nats) between the joint value of `fields` and the label.
double mutual_information(const Dataset& train, std::span<const std::size_t> fields);

/// Pearson correlation; NaN when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Positions of the k largest values, ties broken by lower position.
std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k);

/// |top_k(a) ∩ top_k(b)| / k.
double topk_overlap(std::span<const double> a, std::span<const double> b, std::size_t k);

struct OverlapPoint {
  std::size_t k = 0;
  double overlap = 0.0;
  double baseline_squared = 0.0;  // (k / n_tuples)²
  double baseline_linear = 0.0;   // k / n_tuples, the expected overlap of two random top-k sets
};

struct InteractionReport {
  std::size_t order = 0;
  std::vector<FieldTuple> tuples;
  std::vector<double> learned_strength;
  std::vector<double> mutual_info;
  double pearson = 0.0;
  std::vector<OverlapPoint> topk_overlap;
};

/// k values outside [1, n_tuples] are clamped.
InteractionReport interaction_report(const ModelBundle& bundle, const Dataset& train, std::size_t order,
                                     const std::vector<std::size_t>& k_list, std::size_t cap = kDefaultTensorCap);

/// Rows sorted by learned strength (descending); `limit` = 0 writes every tuple.
/// Tuples are printed as field indices joined by '-', or names when given.
void write_interaction_csv(std::ostream& out, const InteractionReport& report, std::size_t limit = 0,
                           const std::vector<std::string>& field_names = {});
void write_interaction_json(std::ostream& out, const InteractionReport& report);

}  // namespace tfm
