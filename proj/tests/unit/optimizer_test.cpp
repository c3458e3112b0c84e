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

#include <cmath>
#include <limits>

#include "tensorfm/error.hpp"
#include "tensorfm/optimizer.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

ModelBundle tiny_lr() {
  ModelConfig config;
  config.kind = ModelKind::kLR;
  return init_model(FieldSchema::build({2}), config);
}

TEST(Adagrad, FirstUnitStepMovesByLearningRate) {
  ModelBundle b = tiny_lr();
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  g.bias = 1.0;
  TrainConfig config;
  config.learning_rate = 0.1;
  adagrad_step(b, g, state, config);
  EXPECT_NEAR(b.linear.b, -0.1, 1e-8);
}

TEST(Adagrad, SecondUnitStepShrinksBySqrtTwo) {
  ModelBundle b = tiny_lr();
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  g.bias = 1.0;
  TrainConfig config;
  config.learning_rate = 0.1;
  adagrad_step(b, g, state, config);
  const double after_first = b.linear.b;
  adagrad_step(b, g, state, config);
  EXPECT_NEAR(b.linear.b - after_first, -0.1 / std::sqrt(2.0), 1e-8);
}

TEST(Adagrad, ZeroGradientLeavesParametersUnchanged) {
  testing::Rng rng(1);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kTensorFMTucker, schema, 2, 3, {2}, rng);
  const ModelBundle before = b;
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  for (std::size_t f = 0; f < schema.num_features(); ++f) g.mark(f);
  TrainConfig config;
  adagrad_step(b, g, state, config);
  EXPECT_EQ(b, before);
}

TEST(Adagrad, L2AloneShrinksMagnitudesEveryStep) {
  testing::Rng rng(2);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kTensorFM, schema, 2, 3, {2}, rng);
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  for (std::size_t f = 0; f < schema.num_features(); ++f) g.mark(f);
  TrainConfig config;
  config.learning_rate = 0.01;
  config.l2_linear = config.l2_embedding = config.l2_factors = 1e-2;
  auto norms = [&](ModelBundle& m) {
    std::vector<double> out;
    for (const auto& ref : block_refs(m, g)) {
      if (ref.group == BlockGroup::kBias) continue;
      double s = 0.0;
      for (double v : ref.params) s += v * v;
      out.push_back(s);
    }
    return out;
  };
  for (int step = 0; step < 20; ++step) {
    const auto before = norms(b);
    adagrad_step(b, g, state, config);
    const auto after = norms(b);
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_LT(after[i], before[i]) << "block " << i;
  }
}

TEST(Adagrad, UntouchedRowsAreNotRegularized) {
  ModelConfig mc;
  mc.kind = ModelKind::kFM;
  mc.k = 2;
  mc.init_scale = 0.5;
  ModelBundle b = init_model(FieldSchema::build({3, 3}), mc);
  b.linear.w = {1, 1, 1, 1, 1, 1};
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  g.mark(0);
  TrainConfig config;
  config.l2_linear = config.l2_embedding = 0.5;
  const ModelBundle before = b;
  adagrad_step(b, g, state, config);
  EXPECT_LT(b.linear.w[0], 1.0);
  for (std::size_t f = 1; f < 6; ++f) {
    EXPECT_EQ(b.linear.w[f], 1.0);
    EXPECT_EQ(b.embeddings(f, 0), before.embeddings(f, 0));
  }
}

TEST(Adagrad, NonFiniteGradientNamesBlock) {
  ModelConfig mc;
  mc.kind = ModelKind::kTensorFM;
  mc.k = 2;
  mc.d = 2;
  mc.ranks = {1};
  ModelBundle b = init_model(FieldSchema::build({2, 2}), mc);
  AdagradState state = AdagradState::for_bundle(b);
  GradBundle g = GradBundle::zeros_like(b);
  g.cp[0].factors[1].data[0] = std::numeric_limits<double>::quiet_NaN();
  try {
    adagrad_step(b, g, state, TrainConfig{});
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("cp.2.factor.2"), std::string::npos) << e.what();
  }
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.epochs = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TrainConfig{};
  c.learning_rate = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TrainConfig{};
  c.l2_factors = -1e-3;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace tfm
