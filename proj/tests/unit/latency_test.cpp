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
#include "tensorfm/latency.hpp"
#include "tensorfm/synthetic.hpp"

namespace tfm {
namespace {

TEST(Latency, PositiveAndFinite) {
  SyntheticSpec spec;
  spec.n_samples = 500;
  const Dataset data = generate_synthetic(spec);
  ModelConfig config;
  config.kind = ModelKind::kTensorFM;
  config.d = 3;
  config.ranks = {2};
  const ModelBundle model = init_model(data.schema, config);
  const LatencyReport r = time_inference(model, data, 5);
  ASSERT_EQ(r.per_repeat_ms.size(), 5u);
  EXPECT_GT(r.median_ms, 0.0);
  EXPECT_TRUE(std::isfinite(r.median_ms));
  EXPECT_TRUE(std::isfinite(r.stddev_ms));
  EXPECT_GE(r.mean_ms, *std::min_element(r.per_repeat_ms.begin(), r.per_repeat_ms.end()));
}

TEST(Latency, RejectsTooFewRepeats) {
  SyntheticSpec spec;
  spec.n_samples = 10;
  const Dataset data = generate_synthetic(spec);
  const ModelBundle model = init_model(data.schema, {ModelKind::kLR, 0, 1, {}, 0.01, 0});
  EXPECT_THROW(time_inference(model, data, 2), ConfigError);
}

}  // namespace
}  // namespace tfm
