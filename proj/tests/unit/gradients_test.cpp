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

#include "tensorfm/error.hpp"
#include "tensorfm/gradients.hpp"
#include "tensorfm/scoring.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

using testing::Rng;

TEST(BceLoss, Examples) {
  EXPECT_NEAR(bce_loss(0.5, 0), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce_loss(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce_from_logit(0.0, 1), bce_loss(0.5, 1), 1e-15);
  EXPECT_NEAR(bce_from_logit(0.0, 0), bce_loss(0.5, 0), 1e-15);
  EXPECT_NEAR(bce_from_logit(2.0, 1), std::log1p(std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(bce_from_logit(2.0, 1), 0.1269280110429725, 1e-12);
}

TEST(BceLoss, LogitFormMatchesProbabilityForm) {
  // The probability form cancels catastrophically once 1 − p underflows, so it
  // only serves as a reference for moderate scores.
  for (double s = -15.0; s <= 15.0; s += 0.37) {
    for (int y : {0, 1}) EXPECT_NEAR(bce_from_logit(s, y), bce_loss(sigmoid(s), y), 1e-8);
  }
  for (double s = 15.0; s <= 700.0; s += 13.0) {
    EXPECT_NEAR(bce_from_logit(s, 0), s + std::log1p(std::exp(-s)), 1e-12 * s);
    EXPECT_NEAR(bce_from_logit(-s, 1), s + std::log1p(std::exp(-s)), 1e-12 * s);
  }
  EXPECT_TRUE(std::isfinite(bce_from_logit(-800.0, 1)));
  EXPECT_NEAR(bce_from_logit(-800.0, 1), 800.0, 1e-9);
}

class GradientKinds : public ::testing::TestWithParam<ModelKind> {};

TEST_P(GradientKinds, MatchesCentralDifferences) {
  Rng rng(100 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 25; ++trial) {
    ModelBundle b = testing::random_small_bundle(GetParam(), rng, 5, 4, 4, 3, 0.7);
    const Instance x = testing::random_instance(b.schema, rng);
    const double upstream = 0.25 + 0.5 * (rng() % 1000) / 1000.0;
    const auto check = testing::finite_difference_check(b, x, upstream);
    EXPECT_LT(check.worst_rel, 1e-5) << kind_name(GetParam()) << " worst at " << check.worst_block;
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, GradientKinds, ::testing::ValuesIn(testing::kAllKinds),
                         [](const auto& info) {
                           std::string name(kind_name(info.param));
                           for (char& c : name) {
                             if (c == '-') c = '_';
                           }
                           return name;
                         });

TEST(Backward, ZeroFactorsLeaveOnlyLinearGradients) {
  Rng rng(7);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kTensorFM, schema, 3, 3, {2}, rng);
  for (auto& set : b.cp) {
    for (auto& f : set.factors) std::fill(f.data.begin(), f.data.end(), 0.0);
  }
  const Instance x = testing::random_instance(schema, rng);
  const GradBundle g = backward(b, x, 1.0);
  for (double v : g.embeddings.data) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(g.bias, 1.0);
  std::vector<double> expected(schema.num_features(), 0.0);
  for (std::size_t j = 0; j < 4; ++j) expected[schema.global_index(j, x.active[j])] = x.values[j];
  EXPECT_EQ(g.w, expected);
}

TEST(Backward, OrderTwoCpMatchesLowRank) {
  Rng rng(8);
  const FieldSchema schema = testing::random_schema(rng, 5, 3);
  ModelBundle t = testing::random_bundle(ModelKind::kTensorFM, schema, 3, 2, {3}, rng);
  ModelBundle low = t;
  low.kind = ModelKind::kFwFMLowRank;
  const Instance x = testing::random_instance(schema, rng);
  const GradBundle gt = backward(t, x, 0.8);
  const GradBundle gl = backward(low, x, 0.8);
  EXPECT_EQ(gt.embeddings, gl.embeddings);
  EXPECT_EQ(gt.cp, gl.cp);
}

TEST(Backward, RejectsForeignCache) {
  Rng rng(9);
  const FieldSchema schema = testing::random_schema(rng, 3, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kFM, schema, 2, 2, {}, rng);
  const Instance x = testing::random_instance(schema, rng);
  const Instance y = testing::random_instance(schema, rng);
  ForwardCache cache;
  forward(b, x, cache);
  GradBundle g = GradBundle::zeros_like(b);
  EXPECT_THROW(backward(b, y, cache, 1.0, g), ConfigError);
  ForwardCache empty;
  EXPECT_THROW(backward(b, x, empty, 1.0, g), ConfigError);
}

TEST(GradBundle, ClearResetsTouchedRowsAndDenseBlocks) {
  Rng rng(10);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kTensorFMTucker, schema, 2, 3, {2}, rng);
  GradBundle g = GradBundle::zeros_like(b);
  ForwardCache cache;
  for (int i = 0; i < 5; ++i) {
    const Instance x = testing::random_instance(schema, rng);
    forward(b, x, cache);
    backward(b, x, cache, 1.0, g);
  }
  EXPECT_FALSE(g.touched.empty());
  g.clear();
  const GradBundle zero = GradBundle::zeros_like(b);
  EXPECT_TRUE(g.touched.empty());
  EXPECT_EQ(g.bias, 0.0);
  EXPECT_EQ(g.w, zero.w);
  EXPECT_EQ(g.embeddings, zero.embeddings);
  EXPECT_EQ(g.tucker, zero.tucker);
}

TEST(GradBundle, AccumulationIsSumOfSingleGradients) {
  Rng rng(11);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kFwFM, schema, 2, 2, {}, rng);
  const Instance x = testing::random_instance(schema, rng);
  const Instance y = testing::random_instance(schema, rng);
  GradBundle sum = GradBundle::zeros_like(b);
  ForwardCache cache;
  forward(b, x, cache);
  backward(b, x, cache, 0.3, sum);
  forward(b, y, cache);
  backward(b, y, cache, -0.6, sum);
  const GradBundle gx = backward(b, x, 0.3);
  const GradBundle gy = backward(b, y, -0.6);
  for (std::size_t i = 0; i < sum.pair_upper.size(); ++i) {
    EXPECT_NEAR(sum.pair_upper[i], gx.pair_upper[i] + gy.pair_upper[i], 1e-15);
  }
  EXPECT_NEAR(sum.bias, -0.3, 1e-15);
}

TEST(BlockRefs, NamesFollowModelLayout) {
  Rng rng(12);
  const FieldSchema schema = testing::random_schema(rng, 4, 3);
  ModelBundle b = testing::random_bundle(ModelKind::kTensorFM, schema, 2, 3, {2}, rng);
  const GradBundle g = GradBundle::zeros_like(b);
  std::vector<std::string> names;
  for (const auto& ref : block_refs(b, g)) names.push_back(ref.name);
  const std::vector<std::string> expected = {"linear.b",         "linear.w",         "embeddings",
                                             "cp.2.factor.1",    "cp.2.factor.2",    "cp.3.factor.1",
                                             "cp.3.factor.2",    "cp.3.factor.3"};
  EXPECT_EQ(names, expected);
}

}  // namespace
}  // namespace tfm
