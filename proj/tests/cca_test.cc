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

#include "resim/cca.h"

#include <gtest/gtest.h>

#include <Eigen/QR>

#include <cmath>

#include "fixtures.h"
#include "resim/repcore.h"

namespace resim {
namespace {

using fixtures::gaussian;

// Orthonormal, centered columns.
Matrix centered_basis(Index n, Index d, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(center_columns(gaussian(n, d, seed)));
  return qr.householderQ() * Matrix::Identity(n, d);
}

TEST(CcaCore, IdenticalInputs) {
  const Matrix x = center_columns(gaussian(30, 4, 1));
  const CcaSolution s = cca_core(x, x);
  ASSERT_EQ(s.correlations.size(), 4);
  EXPECT_TRUE(s.correlations.isOnes(1e-10));
}

TEST(CcaCore, OrthogonalSpaces) {
  const Matrix u = centered_basis(20, 4, 2);
  const CcaSolution s = cca_core(u.leftCols(2), u.rightCols(2));
  EXPECT_LT(s.correlations.maxCoeff(), 1e-10);
}

TEST(CcaCore, PlantedRotation) {
  const Matrix u = centered_basis(25, 3, 3);
  const double theta = 0.7;
  Matrix x(25, 2), y(25, 2);
  x << u.col(0), u.col(1);
  y << u.col(0), std::cos(theta) * u.col(1) + std::sin(theta) * u.col(2);
  const CcaSolution s = cca_core(x, y);
  ASSERT_EQ(s.correlations.size(), 2);
  EXPECT_NEAR(s.correlations(0), 1, 1e-10);
  EXPECT_NEAR(s.correlations(1), std::cos(theta), 1e-10);
}

TEST(Svcca, Examples) {
  const Matrix r = gaussian(60, 5, 4);
  EXPECT_NEAR(svcca(r, r * random_orthogonal(5, 5)), 1, 1e-6);
  EXPECT_LT(svcca(gaussian(2000, 5, 6), gaussian(2000, 5, 7)), 0.5);
  const Matrix rank1 = gaussian(30, 1, 8) * gaussian(1, 4, 9);
  EXPECT_NEAR(svcca(rank1, rank1), 1, 1e-10);
}

TEST(Svcca, SymmetricOnFullRank) {
  const Matrix a = gaussian(50, 4, 10), b = gaussian(50, 4, 11);
  EXPECT_NEAR(svcca(a, b), svcca(b, a), 1e-8);
}

TEST(Pwcca, Examples) {
  const Matrix r = gaussian(40, 5, 12);
  EXPECT_NEAR(pwcca(r, r), 1, 1e-10);
  EXPECT_NEAR(pwcca(r, r * random_orthogonal(5, 13)), 1, 1e-6);
  try {
    pwcca(Matrix::Ones(10, 3), r.topRows(10));
    FAIL() << "expected an error";
  } catch (const MeasureError& e) {
    EXPECT_EQ(e.kind(), FailureKind::kUndefinedInput);
  }
}

TEST(Pwcca, WithinUnitInterval) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const double v = pwcca(gaussian(30, 4, s), gaussian(30, 6, s + 40));
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 1);
  }
}

}  // namespace
}  // namespace resim
