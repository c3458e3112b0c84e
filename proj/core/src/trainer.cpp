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

#include "tensorfm/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "tensorfm/gradients.hpp"
#include "tensorfm/metrics.hpp"
#include "tensorfm/scoring.hpp"
#include "text_util.hpp"

namespace tfm {

namespace {

void score_validation(const ModelBundle& model, const Dataset& valid, EpochLog& entry) {
  if (valid.empty()) return;
  const std::vector<double> scores = score_all(model, valid);
  std::vector<int> labels(valid.size());
  for (std::size_t i = 0; i < valid.size(); ++i) labels[i] = valid.instances[i].label;
  entry.valid_logloss = logloss(scores, labels);
  if (std::isnan(entry.valid_logloss)) return;
  const std::size_t pos = valid.count_positive();
  if (pos > 0 && pos < valid.size()) entry.valid_auc = auc(scores, labels);
}

}  // namespace

TrainResult train(const ModelBundle& initial, const Dataset& train_set, const Dataset& valid_set,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  initial.validate();
  if (train_set.empty()) throw DataError("training set is empty");
  if (!(train_set.schema == initial.schema)) throw SchemaError("training set schema does not match the model");
  if (!valid_set.empty() && !(valid_set.schema == initial.schema)) {
    throw SchemaError("validation set schema does not match the model");
  }

  TrainResult result{initial, {}};
  ModelBundle& model = result.model;
  AdagradState state = AdagradState::for_bundle(model);
  GradBundle grads = GradBundle::zeros_like(model);
  ForwardCache cache;
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      grads.clear();
      double batch_loss = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const Instance& inst = train_set.instances[order[i]];
        const double s = forward(model, inst, cache);
        batch_loss += bce_from_logit(s, inst.label);
        backward(model, inst, cache, sigmoid(s) - inst.label, grads);
      }
      if (!std::isfinite(batch_loss)) {
        throw TrainingDiverged("training loss became non-finite in epoch " + std::to_string(epoch) +
                                   "; last good epoch " + std::to_string(epoch - 1),
                               epoch - 1);
      }
      loss_sum += batch_loss;
      grads.scale(1.0 / static_cast<double>(end - begin));
      try {
        adagrad_step(model, grads, state, config);
      } catch (const NumericError& e) {
        throw TrainingDiverged(std::string(e.what()) + " in epoch " + std::to_string(epoch) + "; last good epoch " +
                                   std::to_string(epoch - 1),
                               epoch - 1);
      }
    }
    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(order.size());
    score_validation(model, valid_set, entry);
    if (!valid_set.empty() && std::isnan(entry.valid_logloss)) {
      throw TrainingDiverged("validation loss became NaN in epoch " + std::to_string(epoch) + "; last good epoch " +
                                 std::to_string(epoch - 1),
                             epoch - 1);
    }
    entry.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.log.push_back(entry);
    if (on_epoch) on_epoch(entry);
  }
  return result;
}

std::vector<GridPoint> make_grid(const std::vector<double>& learning_rates, const std::vector<double>& l2s) {
  std::vector<GridPoint> grid;
  for (double lr : learning_rates) {
    for (double l2 : l2s) grid.push_back({lr, l2});
  }
  return grid;
}

GridResult grid_search(const ModelBundle& initial, const std::vector<GridPoint>& grid, const Dataset& train_set,
                       const Dataset& valid_set, const TrainConfig& base) {
  if (grid.empty()) throw ConfigError("grid search needs at least one grid point");
  GridResult result;
  bool have_best = false;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    TrainConfig config = base;
    config.learning_rate = grid[g].learning_rate;
    config.l2_linear = config.l2_embedding = config.l2_factors = grid[g].l2;
    GridRow row;
    row.point = grid[g];
    row.grid_index = g;
    try {
      TrainResult run = train(initial, train_set, valid_set, config);
      row.valid_auc = run.log.back().valid_auc;
      row.valid_logloss = run.log.back().valid_logloss;
      const bool better = !have_best || row.valid_auc > result.report[result.best_index].valid_auc ||
                          (row.valid_auc == result.report[result.best_index].valid_auc &&
                           row.valid_logloss < result.report[result.best_index].valid_logloss);
      result.report.push_back(row);
      if (better) {
        have_best = true;
        result.best_index = result.report.size() - 1;
        result.best = std::move(run.model);
        result.best_log = std::move(run.log);
      }
    } catch (const TrainingDiverged& e) {
      row.diverged = true;
      row.note = e.what();
      result.report.push_back(row);
    }
  }
  if (!have_best) throw NumericError("every grid point diverged");
  result.best_index = result.report[result.best_index].grid_index;
  std::stable_sort(result.report.begin(), result.report.end(), [](const GridRow& a, const GridRow& b) {
    if (a.diverged != b.diverged) return !a.diverged;
    if (a.diverged) return false;
    if (a.valid_auc != b.valid_auc) return a.valid_auc > b.valid_auc;
    return a.valid_logloss < b.valid_logloss;
  });
  return result;
}

void write_epoch_log(std::ostream& out, const std::vector<EpochLog>& log) {
  out << "epoch,train_loss,valid_logloss,valid_auc,wall_seconds\n";
  std::string line;
  for (const EpochLog& e : log) {
    line.clear();
    line += std::to_string(e.epoch);
    for (double v : {e.train_loss, e.valid_logloss, e.valid_auc, e.wall_seconds}) {
      line += ',';
      text::append_double(line, v);
    }
    out << line << '\n';
  }
}

void write_grid_report(std::ostream& out, const std::vector<GridRow>& report) {
  out << "grid_index,learning_rate,l2,valid_auc,valid_logloss,diverged\n";
  std::string line;
  for (const GridRow& r : report) {
    line = std::to_string(r.grid_index);
    for (double v : {r.point.learning_rate, r.point.l2, r.valid_auc, r.valid_logloss}) {
      line += ',';
      text::append_double(line, v);
    }
    line += r.diverged ? ",1" : ",0";
    out << line << '\n';
  }
}

}  // namespace tfm
