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
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "tensorfm/error.hpp"
#include "tensorfm/model.hpp"
#include "tensorfm/optimizer.hpp"
#include "tensorfm/schema.hpp"

namespace tfm {

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_logloss = std::numeric_limits<double>::quiet_NaN();
  double valid_auc = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
};

struct TrainResult {
  ModelBundle model;
  std::vector<EpochLog> log;
};

/// Raised when the training loss stops being finite.
class TrainingDiverged : public NumericError {
 public:
  TrainingDiverged(const std::string& what, std::size_t last_good_epoch)
      : NumericError(what), last_good_epoch_(last_good_epoch) {}
  /// Last epoch that completed with a finite loss, 0 if none did.
  std::size_t last_good_epoch() const { return last_good_epoch_; }

 private:
  std::size_t last_good_epoch_;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// Mini-batch AdaGrad on binary cross-entropy. Each epoch shuffles the training
/// set with a generator seeded from config.seed, averages gradients over every
/// batch and then scores `valid` (AUC and log-loss are NaN when `valid` is empty
/// or single-class). Returns the bundle after the final epoch.
TrainResult train(const ModelBundle& initial, const Dataset& train_set, const Dataset& valid_set,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

struct GridPoint {
  double learning_rate = 0.0;
  double l2 = 0.0;  // applied to linear, embedding and interaction blocks alike
};

struct GridRow {
  GridPoint point;
  std::size_t grid_index = 0;
  bool diverged = false;
  double valid_auc = std::numeric_limits<double>::quiet_NaN();
  double valid_logloss = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

struct GridResult {
  ModelBundle best;
  std::size_t best_index = 0;
  std::vector<EpochLog> best_log;
  /// One row per grid point: finite runs by validation AUC (descending), then
  /// log-loss, then grid order; diverged runs last.
  std::vector<GridRow> report;
};

/// Cartesian grid over learning rates and L2 coefficients, in that nesting order.
std::vector<GridPoint> make_grid(const std::vector<double>& learning_rates, const std::vector<double>& l2s);

/// Trains `initial` once per grid point and keeps the run with the best validation
/// AUC. Throws ConfigError on an empty grid and NumericError if every point diverges.
GridResult grid_search(const ModelBundle& initial, const std::vector<GridPoint>& grid, const Dataset& train_set,
                       const Dataset& valid_set, const TrainConfig& base);

void write_epoch_log(std::ostream& out, const std::vector<EpochLog>& log);
void write_grid_report(std::ostream& out, const std::vector<GridRow>& report);

}  // namespace tfm
