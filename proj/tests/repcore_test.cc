// Copyright 2026 The resim Authors.
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

#include "resim/repcore.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.h"

namespace resim {
namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> values) {
  Matrix m(values.size(), values.begin()->size());
  Index i = 0;
  for (const auto& row : values) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(Representation, ValidatesShapeAndValues) {
  EXPECT_NO_THROW(Representation::make(Matrix::Ones(2, 1), "a"));
  EXPECT_THROW(Representation::make(Matrix::Ones(1, 3), "a"), MeasureError);
  EXPECT_THROW(Representation::make(Matrix::Ones(3, 0), "a"), MeasureError);
  Matrix bad = Matrix::Ones(3, 2);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(Representation::make(bad, "a"), MeasureError);
  EXPECT_THROW(Representation::make(Matrix::Ones(3, 2), "a", -1), MeasureError);
}

TEST(ModelOutputsTest, ValidatesProbabilities) {
  EXPECT_NO_THROW(ModelOutputs::make(rows({{0.2, 0.8}, {1, 0}}), {1, 0}));
  EXPECT_THROW(ModelOutputs::make(rows({{0.2, 0.7}, {1, 0}}), {1, 0}), MeasureError);
  EXPECT_THROW(ModelOutputs::make(rows({{-0.1, 1.1}, {1, 0}}), {1, 0}), MeasureError);
  EXPECT_THROW(ModelOutputs::make(rows({{0.2, 0.8}, {1, 0}}), {2, 0}), MeasureError);
  EXPECT_THROW(ModelOutputs::make(rows({{0.2, 0.8}, {1, 0}}), {1}), MeasureError);
  EXPECT_THROW(ModelOutputs::make(rows({{1}, {1}}), {0, 0}), MeasureError);
}

TEST(MeasureResultTest, NonFiniteBecomesNumericalFailure) {
  const MeasureResult r = MeasureResult::success(std::nan(""));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error().kind, FailureKind::kNumerical);
  EXPECT_EQ(MeasureResult::success(0.5).value(), 0.5);
}

TEST(CenterColumns, Examples) {
  EXPECT_EQ(center_columns(rows({{1}, {3}})), rows({{-1}, {1}}));
  EXPECT_EQ(center_columns(rows({{1, 2}, {3, 4}, {5, 6}})),
            rows({{-2, -2}, {0, 0}, {2, 2}}));
  const Matrix c = center_columns(fixtures::gaussian(20, 4, 1));
  EXPECT_TRUE(center_columns(c).isApprox(c, 1e-12));
  EXPECT_LT(c.colwise().mean().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(NormalizeMatrix, Examples) {
  EXPECT_TRUE(normalize_matrix(rows({{3, 4}}), 1.0).isApprox(rows({{0.6, 0.8}}), 1e-15));
  const Matrix u = rows({{0.6, 0.8}});
  EXPECT_TRUE(normalize_matrix(u, 1.0).isApprox(u, 1e-15));
  EXPECT_TRUE(normalize_matrix(rows({{1}, {1}}), std::sqrt(2.0)).isApprox(rows({{1}, {1}}), 1e-15));
  try {
    normalize_matrix(Matrix::Zero(2, 2));
    FAIL();
  } catch (const MeasureError& e) {
    EXPECT_EQ(e.kind(), FailureKind::kUndefinedInput);
  }
}

TEST(CosineKnn, TieGoesToLowerIndex) {
  const NeighborLists nn = cosine_knn(rows({{1, 0}, {0, 1}, {1, 1}}), 1);
  EXPECT_EQ(nn.of(2), (std::vector<Index>{0}));
  EXPECT_EQ(nn.of(0), (std::vector<Index>{2}));
  EXPECT_EQ(nn.k(), 1);
}

TEST(CosineKnn, ExcludesSelfWithDuplicates) {
  const Matrix m = rows({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  const NeighborLists nn = cosine_knn(m, 2);
  for (Index i = 0; i < 4; ++i) {
    for (Index j : nn.of(i)) EXPECT_NE(j, i);
  }
  EXPECT_EQ(nn.of(0)[0], 1);
  EXPECT_EQ(nn.of(3)[0], 2);
}

TEST(CosineKnn, Preconditions) {
  EXPECT_THROW(cosine_knn(Matrix::Ones(3, 2), 3), MeasureError);
  EXPECT_THROW(cosine_knn(Matrix::Ones(3, 2), 0), MeasureError);
  Matrix z = Matrix::Ones(4, 2);
  z.row(2).setZero();
  EXPECT_THROW(cosine_knn(z, 1), MeasureError);
  EXPECT_EQ(kDefaultNeighbors, 10);
}

TEST(CosineKnn, InvariantToRowScalingAndPermutation) {
  const Matrix m = fixtures::gaussian(30, 5, 2);
  Vector scale = fixtures::gaussian(30, 1, 3).col(0).cwiseAbs().array() + 0.1;
  EXPECT_EQ(cosine_knn(scale.asDiagonal() * m, 4), cosine_knn(m, 4));

  const auto p = fixtures::permutation(30, 4);
  const NeighborLists a = cosine_knn(m, 4);
  const NeighborLists b = cosine_knn(fixtures::permute_rows(m, p), 4);
  std::vector<Index> inverse(30);
  for (Index i = 0; i < 30; ++i) inverse[static_cast<std::size_t>(p[i])] = i;
  for (Index i = 0; i < 30; ++i) {
    std::vector<Index> mapped;
    for (Index j : b.of(i)) mapped.push_back(p[static_cast<std::size_t>(j)]);
    EXPECT_EQ(mapped, a.of(p[static_cast<std::size_t>(i)]));
  }
}

TEST(EuclideanRsm, Examples) {
  EXPECT_EQ(euclidean_rsm(rows({{0}, {3}})), rows({{0, 3}, {3, 0}}));
  EXPECT_TRUE(euclidean_rsm(rows({{1, 2}, {1, 2}})).isZero());
  const Matrix d = euclidean_rsm(rows({{0, 0}, {3, 0}, {0, 4}}));
  EXPECT_DOUBLE_EQ(d(0, 1), 3);
  EXPECT_DOUBLE_EQ(d(0, 2), 4);
  EXPECT_DOUBLE_EQ(d(1, 2), 5);
}

TEST(EuclideanRsm, OrthogonalInvariance) {
  const Matrix m = fixtures::gaussian(15, 6, 5);
  const Matrix q = random_orthogonal(6, 6);
  EXPECT_LT((euclidean_rsm(m * q) - euclidean_rsm(m)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PearsonRowRsm, Examples) {
  EXPECT_NEAR(pearson_row_rsm(rows({{1, 2, 3}, {1, 2, 3}}))(0, 1), 1, 1e-15);
  EXPECT_NEAR(pearson_row_rsm(rows({{1, 2, 3}, {3, 2, 1}}))(0, 1), -1, 1e-15);
  EXPECT_NEAR(pearson_row_rsm(rows({{1, 2, 3}, {1, 2, 4}}))(0, 1), 0.9819805, 1e-7);
  EXPECT_THROW(pearson_row_rsm(rows({{1, 1, 1}, {1, 2, 3}})), MeasureError);
  EXPECT_THROW(pearson_row_rsm(rows({{1}, {2}})), MeasureError);
}

TEST(UpperTriangle, RowByRow) {
  const Matrix m = rows({{0, 1, 2}, {9, 0, 3}, {9, 9, 0}});
  const Vector v = upper_triangle(m);
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v(0), 1);
  EXPECT_EQ(v(1), 2);
  EXPECT_EQ(v(2), 3);
}

}  // namespace
}  // namespace resim
