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

#include "tensorfm/schema.hpp"

namespace tfm {

// Random ℓ-wise interaction data. Every tuple of the first `order` fields gets a
// Bernoulli(1/2) label drawn once; remaining signal fields and the noise fields
// are sampled uniformly and never influence the label. Field layout is
// [signal fields..., noise fields...], all with the same cardinality.
struct SyntheticSpec {
  std::size_t n_signal = 3;
  std::uint32_t cardinality = 20;
  std::size_t order = 3;
  std::size_t n_noise = 0;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  /// Upper bound on cardinality^order, the size of the label table.
  std::size_t table_limit = std::size_t{1} << 26;

  void validate() const;
  std::size_t num_fields() const { return n_signal + n_noise; }
};

Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace tfm
