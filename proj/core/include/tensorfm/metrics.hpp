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

#include "tensorfm/model.hpp"
#include "tensorfm/schema.hpp"

namespace tfm {

/// Mann-Whitney AUC with ties counted as one half, O(N log N).
/// Throws DataError unless both classes are present.
double auc(std::span<const double> scores, std::span<const int> labels);

/// Mean binary cross-entropy of raw scores. Throws DataError on empty input.
double logloss(std::span<const double> scores, std::span<const int> labels);

struct EvalReport {
  double auc = 0.0;
  double logloss = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

EvalReport evaluate(std::span<const double> scores, std::span<const int> labels);
EvalReport evaluate(const ModelBundle& bundle, const Dataset& data, std::size_t threads = 0);

}  // namespace tfm
