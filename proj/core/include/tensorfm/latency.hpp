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
#include <vector>

#include "tensorfm/model.hpp"
#include "tensorfm/schema.hpp"

namespace tfm {

struct LatencyReport {
  double mean_ms = 0.0;    // per instance, averaged over repeats
  double stddev_ms = 0.0;
  double median_ms = 0.0;
  std::vector<double> per_repeat_ms;
};

/// Single-threaded per-instance scoring latency. Runs `warmup` untimed passes
/// over the dataset, then `repeats` (≥ 3) timed passes.
LatencyReport time_inference(const ModelBundle& bundle, const Dataset& data, std::size_t repeats,
                             std::size_t warmup = 1);

}  // namespace tfm
