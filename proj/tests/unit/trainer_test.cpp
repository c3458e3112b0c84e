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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <sstream>

#include "tensorfm/dataset_io.hpp"
#include "tensorfm/error.hpp"
#include "tensorfm/metrics.hpp"
#include "tensorfm/synthetic.hpp"
#include "tensorfm/trainer.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

Split order_one_data() {
  SyntheticSpec spec;
  spec.n_signal = 3;
  spec.cardinality = 10;
  spec.order = 1;
  spec.n_samples = 6000;
  spec.seed = 4;
  return split(generate_synthetic(spec), {0.7, 0.15, 0.15}, 1);
}

ModelBundle fresh(ModelKind kind, const FieldSchema& schema, std::size_t d = 2, std::vector<std::size_t> ranks = {}) {
  ModelConfig config;
  config.kind = kind;
  config.k = 4;
  config.d = d;
  config.ranks = std::move(ranks);
  config.seed = 11;
  return init_model(schema, config);
}

TEST(Train, LogisticRegressionLearnsOrderOneSignal) {
  const Split data = order_one_data();
  TrainConfig config;
  config.learning_rate = 0.1;
  config.batch_size = 64;
  const TrainResult r = train(fresh(ModelKind::kLR, data.train.schema), data.train, data.valid, config);
  ASSERT_EQ(r.log.size(), 5u);
  EXPECT_GT(r.log.back().valid_auc, 0.95);
  EXPECT_GT(evaluate(r.model, data.test).auc, 0.95);
}

TEST(Train, ZeroLearningRateKeepsInitialBundle) {
  const Split data = order_one_data();
  TrainConfig config;
  config.learning_rate = 0.0;
  config.epochs = 2;
  const ModelBundle init = fresh(ModelKind::kTensorFM, data.train.schema, 3, {2});
  const TrainResult r = train(init, data.train, data.valid, config);
  EXPECT_EQ(r.model, init);
}

TEST(Train, DeterministicGivenSeed) {
  const Split data = order_one_data();
  TrainConfig config;
  config.epochs = 2;
  config.batch_size = 100;
  config.seed = 9;
  const ModelBundle init = fresh(ModelKind::kFwFM, data.train.schema);
  const TrainResult a = train(init, data.train, data.valid, config);
  const TrainResult b = train(init, data.train, data.valid, config);
  EXPECT_EQ(a.model, b.model);
  config.seed = 10;
  const TrainResult c = train(init, data.train, data.valid, config);
  EXPECT_NE(a.model, c.model);
}

TEST(Train, FullBatchLossDecreasesOnSeparablePair) {
  const FieldSchema schema = FieldSchema::build({2, 2});
  Dataset data{schema, {Instance::categorical({0, 1}, 1), Instance::categorical({1, 0}, 0)}, "pair"};
  ModelBundle model = fresh(ModelKind::kTensorFM, schema, 2, {1});
  TrainConfig config;
  config.learning_rate = 0.05;
  config.batch_size = 2;
  config.epochs = 1;
  double previous = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 50; ++step) {
    // one epoch of a two-instance set at batch size 2 is a single full-batch step
    config.seed = static_cast<std::uint64_t>(step);
    TrainResult r = train(model, data, Dataset{}, config);
    EXPECT_LT(r.log[0].train_loss, previous) << "step " << step;
    previous = r.log[0].train_loss;
    model = std::move(r.model);
  }
}

TEST(Train, FullBatchLossDecreasesWithinOneRun) {
  const FieldSchema schema = FieldSchema::build({2, 2});
  Dataset data{schema, {Instance::categorical({0, 1}, 1), Instance::categorical({1, 0}, 0)}, "pair"};
  TrainConfig config;
  config.learning_rate = 0.05;
  config.batch_size = 2;
  config.epochs = 50;
  const TrainResult r = train(fresh(ModelKind::kFM, schema), data, Dataset{}, config);
  for (std::size_t e = 1; e < r.log.size(); ++e) EXPECT_LT(r.log[e].train_loss, r.log[e - 1].train_loss);
}

TEST(Train, RejectsEmptyTrainingSetAndSchemaMismatch) {
  const Split data = order_one_data();
  const ModelBundle init = fresh(ModelKind::kLR, data.train.schema);
  Dataset empty{data.train.schema, {}, "empty"};
  EXPECT_THROW(train(init, empty, data.valid, TrainConfig{}), DataError);
  const ModelBundle other = fresh(ModelKind::kLR, FieldSchema::build({2, 2}));
  EXPECT_THROW(train(other, data.train, data.valid, TrainConfig{}), SchemaError);
}

TEST(Train, DivergenceReportsLastGoodEpoch) {
  const Split data = order_one_data();
  TrainConfig config;
  config.learning_rate = 1e305;
  config.batch_size = 32;
  try {
    train(fresh(ModelKind::kFM, data.train.schema), data.train, data.valid, config);
    FAIL() << "expected divergence";
  } catch (const TrainingDiverged& e) {
    EXPECT_EQ(e.last_good_epoch(), 0u);
  }
}

TEST(Train, EpochLogCsvHasExpectedColumns) {
  std::ostringstream out;
  write_epoch_log(out, {EpochLog{1, 0.5, 0.6, 0.7, 1.25}});
  EXPECT_EQ(out.str(), "epoch,train_loss,valid_logloss,valid_auc,wall_seconds\n1,0.5,0.6,0.7,1.25\n");
}

TEST(GridSearch, SinglePointMatchesTrain) {
  const Split data = order_one_data();
  TrainConfig config;
  config.epochs = 2;
  config.learning_rate = 0.03;
  config.l2_linear = config.l2_embedding = config.l2_factors = 1e-5;
  const ModelBundle init = fresh(ModelKind::kFM, data.train.schema);
  const GridResult g = grid_search(init, {{0.03, 1e-5}}, data.train, data.valid, config);
  const TrainResult r = train(init, data.train, data.valid, config);
  EXPECT_EQ(g.best, r.model);
  ASSERT_EQ(g.report.size(), 1u);
  EXPECT_EQ(g.report[0].valid_auc, r.log.back().valid_auc);
}

TEST(GridSearch, DivergedPointIsExcluded) {
  const Split data = order_one_data();
  TrainConfig config;
  config.epochs = 1;
  const ModelBundle init = fresh(ModelKind::kFM, data.train.schema);
  const GridResult g = grid_search(init, {{1e305, 0.0}, {0.05, 0.0}}, data.train, data.valid, config);
  EXPECT_EQ(g.best_index, 1u);
  ASSERT_EQ(g.report.size(), 2u);
  EXPECT_FALSE(g.report[0].diverged);
  EXPECT_TRUE(g.report[1].diverged);
}

TEST(GridSearch, AllDivergedThrows) {
  const Split data = order_one_data();
  TrainConfig config;
  config.epochs = 1;
  const ModelBundle init = fresh(ModelKind::kFM, data.train.schema);
  EXPECT_THROW(grid_search(init, {{1e305, 0.0}}, data.train, data.valid, config), NumericError);
  EXPECT_THROW(grid_search(init, {}, data.train, data.valid, config), ConfigError);
}

TEST(GridSearch, ThreeByThreeReportIsSorted) {
  const Split data = order_one_data();
  TrainConfig config;
  config.epochs = 1;
  config.batch_size = 256;
  const ModelBundle init = fresh(ModelKind::kLR, data.train.schema);
  const auto grid = make_grid({0.01, 0.05, 0.1}, {0.0, 1e-5, 1e-4});
  ASSERT_EQ(grid.size(), 9u);
  const GridResult g = grid_search(init, grid, data.train, data.valid, config);
  ASSERT_EQ(g.report.size(), 9u);
  for (std::size_t i = 1; i < g.report.size(); ++i) EXPECT_GE(g.report[i - 1].valid_auc, g.report[i].valid_auc);
  EXPECT_EQ(g.report[0].grid_index, g.best_index);
  std::ostringstream out;
  write_grid_report(out, g.report);
  const std::string csv = out.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

}  // namespace
}  // namespace tfm
