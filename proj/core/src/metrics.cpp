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

#include "tensorfm/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tensorfm/error.hpp"
#include "tensorfm/gradients.hpp"
#include "tensorfm/scoring.hpp"

namespace tfm {

namespace {

void check_aligned(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
}

}  // namespace

double auc(std::span<const double> scores, std::span<const int> labels) {
  check_aligned(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the Mann-Whitney U statistic, kept in integers so ties stay exact.
  std::uint64_t twice_u = 0;
  std::uint64_t negatives_below = 0;
  std::uint64_t positives = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? pos : neg) += 1;
      ++j;
    }
    twice_u += 2 * pos * negatives_below + pos * neg;
    negatives_below += neg;
    positives += pos;
    i = j;
  }
  if (positives == 0 || negatives_below == 0) throw DataError("AUC is undefined when only one class is present");
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(positives) * static_cast<double>(negatives_below));
}

double logloss(std::span<const double> scores, std::span<const int> labels) {
  check_aligned(scores, labels);
  if (scores.empty()) throw DataError("log-loss of an empty set");
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) total += bce_from_logit(scores[i], labels[i]);
  return total / static_cast<double>(scores.size());
}

EvalReport evaluate(std::span<const double> scores, std::span<const int> labels) {
  EvalReport report;
  report.auc = auc(scores, labels);
  report.logloss = logloss(scores, labels);
  report.n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  report.n_neg = labels.size() - report.n_pos;
  return report;
}

EvalReport evaluate(const ModelBundle& bundle, const Dataset& data, std::size_t threads) {
  if (!(data.schema == bundle.schema)) throw SchemaError("dataset schema does not match the model schema");
  const std::vector<double> scores = score_all(bundle, data, threads);
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) labels[i] = data.instances[i].label;
  return evaluate(scores, labels);
}

}  // namespace tfm
