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

#include "tensorfm/synthetic.hpp"

#include <random>
#include <string>
#include <vector>

#include "tensorfm/error.hpp"

namespace tfm {

void SyntheticSpec::validate() const {
  if (n_signal == 0 || cardinality == 0 || order == 0 || n_samples == 0) {
    throw ConfigError("synthetic dataset counts must be positive");
  }
  if (order > n_signal) throw ConfigError("order exceeds the number of signal fields");
  std::size_t table = 1;
  for (std::size_t i = 0; i < order; ++i) {
    if (table > table_limit / cardinality) {
      throw CapacityError("label table cardinality^order exceeds limit " +
                          std::to_string(table_limit));
    }
    table *= cardinality;
  }
  if (table > table_limit) {
    throw CapacityError("label table cardinality^order exceeds limit " + std::to_string(table_limit));
  }
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::size_t table_size = 1;
  for (std::size_t i = 0; i < spec.order; ++i) table_size *= spec.cardinality;

  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint8_t> table(table_size);
  for (auto& label : table) label = static_cast<std::uint8_t>(rng() >> 63);

  const std::size_t n = spec.num_fields();
  Dataset data;
  data.schema = FieldSchema::build(std::vector<std::uint32_t>(n, spec.cardinality));
  data.provenance = "synthetic order=" + std::to_string(spec.order) +
                    " card=" + std::to_string(spec.cardinality) +
                    " noise=" + std::to_string(spec.n_noise) + " seed=" + std::to_string(spec.seed);
  data.instances.reserve(spec.n_samples);
  std::uniform_int_distribution<FeatureIndex> pick(0, spec.cardinality - 1);
  for (std::size_t s = 0; s < spec.n_samples; ++s) {
    Instance x;
    x.active.resize(n);
    x.values.assign(n, 1.0);
    std::size_t key = 0;
    for (std::size_t j = 0; j < n; ++j) {
      x.active[j] = pick(rng);
      if (j < spec.order) key = key * spec.cardinality + x.active[j];
    }
    x.label = table[key];
    data.instances.push_back(std::move(x));
  }
  return data;
}

}  // namespace tfm
