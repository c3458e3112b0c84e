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

#include "tensorfm/error.hpp"
#include "tensorfm/model.hpp"
#include "tensorfm/scoring.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

TEST(KindNames, RoundTrip) {
  for (ModelKind kind : testing::kAllKinds) EXPECT_EQ(parse_kind(kind_name(kind)), kind);
  EXPECT_THROW(parse_kind("deepfm"), ConfigError);
}

TEST(Init, TensorFmParameterCount) {
  const FieldSchema schema = FieldSchema::build({5, 7, 3, 9});
  ModelConfig c{ModelKind::kTensorFM, 8, 3, {3, 3}, 0.01, 1};
  const ModelBundle b = init_model(schema, c);
  const std::size_t m = 24, n = 4, k = 8;
  EXPECT_EQ(parameter_count(b), m * k + n * (2 * 3 + 3 * 3) + m + 1);
}

TEST(Init, ParameterCountFormulaAcrossRanks) {
  const FieldSchema schema = FieldSchema::build({4, 4, 4, 4, 4});
  ModelConfig c{ModelKind::kTensorFM, 3, 4, {1, 2, 5}, 0.01, 1};
  const ModelBundle b = init_model(schema, c);
  EXPECT_EQ(parameter_count(b), 20u * 3 + 20 + 1 + 5 * (2 * 1 + 3 * 2 + 4 * 5));
}

TEST(Init, ZeroScaleScoresZero) {
  testing::Rng rng(1);
  const FieldSchema schema = testing::random_schema(rng, 4, 5);
  for (ModelKind kind : testing::kAllKinds) {
    ModelConfig c{kind, 3, 3, {2}, 0.0, 5};
    if (kind == ModelKind::kFM || kind == ModelKind::kFwFM || kind == ModelKind::kFwFMLowRank) c.d = 2;
    if (kind == ModelKind::kLR) c.k = 0;
    const ModelBundle b = init_model(schema, c);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(score(b, testing::random_instance(schema, rng)), 0.0) << kind_name(kind);
  }
}

TEST(Init, SameSeedIsBitIdentical) {
  const FieldSchema schema = FieldSchema::build({5, 5, 5});
  ModelConfig c{ModelKind::kTensorFMTucker, 4, 3, {2}, 0.1, 42};
  EXPECT_EQ(init_model(schema, c), init_model(schema, c));
  ModelConfig other = c;
  other.seed = 43;
  EXPECT_NE(init_model(schema, c), init_model(schema, other));
}

TEST(Init, Errors) {
  const FieldSchema schema = FieldSchema::build({5, 5, 5});
  EXPECT_THROW(init_model(schema, {ModelKind::kTensorFM, 4, 4, {2}, 0.1, 0}), ConfigError);
  EXPECT_THROW(init_model(schema, {ModelKind::kTensorFM, 4, 3, {4}, 0.1, 0}), ConfigError);
  EXPECT_THROW(init_model(schema, {ModelKind::kTensorFM, 4, 3, {1, 2, 3}, 0.1, 0}), ConfigError);
  EXPECT_THROW(init_model(schema, {ModelKind::kHOFM, 4, 1, {}, 0.1, 0}), ConfigError);
  EXPECT_THROW(init_model(schema, {ModelKind::kFM, 0, 2, {}, 0.1, 0}), ConfigError);
  EXPECT_THROW(init_model(schema, {ModelKind::kFM, 4, 2, {}, -1.0, 0}), ConfigError);
}

TEST(Init, FwfmStoresSymmetricZeroDiagonal) {
  const FieldSchema schema = FieldSchema::build({3, 3, 3, 3});
  const ModelBundle b = init_model(schema, {ModelKind::kFwFM, 2, 2, {}, 1.0, 3});
  const Matrix s = b.pair_weights->to_matrix();
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s(i, i), 0.0);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(s(i, j), s(j, i));
  }
}

TEST(Validate, DetectsMissingAndMisshapenBlocks) {
  const FieldSchema schema = FieldSchema::build({3, 3, 3});
  ModelBundle b = init_model(schema, {ModelKind::kTensorFM, 2, 3, {2}, 0.1, 3});
  EXPECT_NO_THROW(b.validate());
  ModelBundle missing = b;
  missing.cp.pop_back();
  EXPECT_THROW(missing.validate(), ShapeError);
  ModelBundle extra = b;
  extra.pair_weights = FieldPairWeights(3);
  EXPECT_THROW(extra.validate(), ShapeError);
  ModelBundle wrong = b;
  wrong.cp[1].factors[2] = Matrix(3, 1);
  EXPECT_THROW(wrong.validate(), ShapeError);
}

TEST(LowRankFromDense, TruncatedRankIsBestApproximation) {
  testing::Rng rng(4);
  const FieldSchema schema = testing::random_schema(rng, 6, 3);
  const ModelBundle dense = testing::random_bundle(ModelKind::kFwFM, schema, 3, 2, {}, rng);
  const ModelBundle full = lowrank_from_dense(dense, 6);
  const DenseTensor s_dense = interaction_tensor(dense, 2);
  const DenseTensor s_full = interaction_tensor(full, 2);
  for (std::size_t i = 0; i < s_dense.size(); ++i) EXPECT_NEAR(s_full.data()[i], s_dense.data()[i], 1e-12);
  const ModelBundle low = lowrank_from_dense(dense, 2);
  EXPECT_EQ(low.kind, ModelKind::kFwFMLowRank);
  EXPECT_EQ(low.cp[0].rank, 2u);
  EXPECT_NO_THROW(low.validate());
  EXPECT_THROW(lowrank_from_dense(dense, 7), ConfigError);
}

}  // namespace
}  // namespace tfm
