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

#include "tensorfm/latency.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tensorfm/error.hpp"
#include "tensorfm/scoring.hpp"

namespace tfm {

namespace {

volatile double g_sink = 0.0;

double pass(const ModelBundle& bundle, const Dataset& data) {
  double acc = 0.0;
  for (const Instance& inst : data.instances) acc += score(bundle, inst);
  return acc;
}

}  // namespace

LatencyReport time_inference(const ModelBundle& bundle, const Dataset& data, std::size_t repeats,
                             std::size_t warmup) {
  if (repeats < 3) throw ConfigError("latency measurement needs at least 3 repeats");
  if (data.empty()) throw DataError("latency measurement needs a non-empty dataset");
  if (!(data.schema == bundle.schema)) throw SchemaError("dataset schema does not match the model schema");

  for (std::size_t w = 0; w < warmup; ++w) g_sink = g_sink + pass(bundle, data);

  LatencyReport report;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    const double acc = pass(bundle, data);
    const auto stop = std::chrono::steady_clock::now();
    g_sink = g_sink + acc;
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    report.per_repeat_ms.push_back(ms / static_cast<double>(data.size()));
  }

  const double count = static_cast<double>(repeats);
  for (double v : report.per_repeat_ms) report.mean_ms += v;
  report.mean_ms /= count;
  for (double v : report.per_repeat_ms) report.stddev_ms += (v - report.mean_ms) * (v - report.mean_ms);
  report.stddev_ms = std::sqrt(report.stddev_ms / (count - 1.0));

  std::vector<double> sorted = report.per_repeat_ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  report.median_ms = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return report;
}

}  // namespace tfm
