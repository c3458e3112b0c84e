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

#include <Eigen/Dense>
#include <random>

#include "tensorfm/error.hpp"
#include "tensorfm/tensor.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(r, c);
  for (double& v : m.data) v = normal(rng);
  return m;
}

TEST(Materialize, RankOneOnes) {
  CPFactorSet set{2, 1, {Matrix(2, 1, 1.0), Matrix(2, 1, 1.0)}};
  const DenseTensor t = materialize(set);
  EXPECT_EQ(t, DenseTensor({2, 2}, 1.0));
}

TEST(Materialize, MatchesTripleLoop) {
  std::mt19937_64 rng(1);
  CPFactorSet set{3, 2, {random_matrix(2, 2, rng), random_matrix(2, 2, rng), random_matrix(2, 2, rng)}};
  const DenseTensor t = materialize(set);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t l = 0; l < 2; ++l) {
        double expected = 0.0;
        for (std::size_t r = 0; r < 2; ++r) {
          expected += set.factors[0](i, r) * set.factors[1](j, r) * set.factors[2](l, r);
        }
        const std::vector<std::size_t> idx = {i, j, l};
        EXPECT_NEAR(t.at(idx), expected, 1e-14);
      }
    }
  }
}

TEST(Materialize, SvdFactorsReconstructMatrix) {
  std::mt19937_64 rng(2);
  const Matrix s = random_matrix(4, 4, rng);
  Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> sm(s.data.data());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd u = svd.matrixU() * svd.singularValues().asDiagonal();
  const Eigen::MatrixXd v = svd.matrixV();
  CPFactorSet set{2, 4, {Matrix(4, 4), Matrix(4, 4)}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      set.factors[0](i, j) = u(i, j);
      set.factors[1](i, j) = v(i, j);
    }
  }
  const DenseTensor t = materialize(set);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(t.data()[i], s.data[i], 1e-10);
}

TEST(Materialize, LinearInEachFactor) {
  std::mt19937_64 rng(3);
  CPFactorSet set{3, 2, {random_matrix(3, 2, rng), random_matrix(3, 2, rng), random_matrix(3, 2, rng)}};
  const DenseTensor base = materialize(set);
  for (double& v : set.factors[0].data) v *= -1.5;
  const DenseTensor scaled = materialize(set);
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(scaled.data()[i], -1.5 * base.data()[i], 1e-13);
}

TEST(Materialize, CapAndShapeErrors) {
  std::mt19937_64 rng(4);
  CPFactorSet set{3, 1, {random_matrix(10, 1, rng), random_matrix(10, 1, rng), random_matrix(10, 1, rng)}};
  EXPECT_THROW(materialize(set, 999), CapacityError);
  set.factors.pop_back();
  EXPECT_THROW(materialize(set), ShapeError);
}

TEST(Reconstruct, MatchesExplicitTuckerSum) {
  std::mt19937_64 rng(5);
  TuckerFactorSet set;
  set.order = 3;
  set.ranks = {2, 3, 1};
  set.core = DenseTensor({2, 3, 1});
  std::normal_distribution<double> normal;
  for (double& v : set.core.data()) v = normal(rng);
  set.factors = {random_matrix(4, 2, rng), random_matrix(4, 3, rng), random_matrix(4, 1, rng)};
  const DenseTensor t = reconstruct(set);
  std::vector<std::size_t> idx(3, 0);
  const std::vector<std::size_t> shape(3, 4);
  do {
    double expected = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        const std::vector<std::size_t> c = {a, b, 0};
        expected += set.core.at(c) * set.factors[0](idx[0], a) * set.factors[1](idx[1], b) * set.factors[2](idx[2], 0);
      }
    }
    EXPECT_NEAR(t.at(idx), expected, 1e-13);
  } while (next_index(idx, shape));
}

TEST(Hosvd, FullRankIsExact) {
  std::mt19937_64 rng(6);
  DenseTensor t({3, 4, 2});
  std::normal_distribution<double> normal;
  for (double& v : t.data()) v = normal(rng);
  const std::vector<std::size_t> ranks = {3, 4, 2};
  const DenseTensor back = reconstruct(hosvd(t, ranks));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(back.data()[i], t.data()[i], 1e-12);
}

TEST(Hosvd, LowMultilinearRankIsRecovered) {
  std::mt19937_64 rng(7);
  TuckerFactorSet truth;
  truth.order = 3;
  truth.ranks = {2, 2, 2};
  truth.core = DenseTensor({2, 2, 2});
  std::normal_distribution<double> normal;
  for (double& v : truth.core.data()) v = normal(rng);
  truth.factors = {random_matrix(5, 2, rng), random_matrix(5, 2, rng), random_matrix(5, 2, rng)};
  const DenseTensor t = reconstruct(truth);
  const DenseTensor back = reconstruct(hosvd(t, truth.ranks));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(back.data()[i], t.data()[i], 1e-10);
}

TEST(ModeProduct, MatchesMatrixProductOnMatrices) {
  std::mt19937_64 rng(8);
  DenseTensor t({3, 2});
  std::normal_distribution<double> normal;
  for (double& v : t.data()) v = normal(rng);
  const Matrix m = random_matrix(4, 3, rng);
  const DenseTensor p = mode_product(t, m, 0);
  ASSERT_EQ(p.shape()[0], 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      double expected = 0.0;
      for (std::size_t c = 0; c < 3; ++c) expected += m(i, c) * t.data()[c * 2 + j];
      EXPECT_NEAR(p.data()[i * 2 + j], expected, 1e-14);
    }
  }
  EXPECT_THROW(mode_product(t, m, 1), ShapeError);
}

TEST(Symmetrize, ProducesPermutationInvariantTensorWithSameSum) {
  std::mt19937_64 rng(9);
  DenseTensor t({3, 3, 3});
  std::normal_distribution<double> normal;
  for (double& v : t.data()) v = normal(rng);
  const DenseTensor s = symmetrize(t);
  double sum_t = 0.0, sum_s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sum_t += t.data()[i];
    sum_s += s.data()[i];
  }
  EXPECT_NEAR(sum_t, sum_s, 1e-12);
  const std::vector<std::size_t> a = {0, 1, 2}, b = {2, 0, 1}, c = {1, 2, 0};
  EXPECT_NEAR(s.at(a), s.at(b), 1e-15);
  EXPECT_NEAR(s.at(a), s.at(c), 1e-15);
  EXPECT_THROW(symmetrize(DenseTensor({2, 3})), ShapeError);
}

}  // namespace
}  // namespace tfm
