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

#include "resim/linalg.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.h"

namespace resim {
namespace {

double assignment_weight(const Matrix& w, const std::vector<Index>& cols) {
  double s = 0;
  for (Index r = 0; r < w.rows(); ++r) s += w(r, cols[static_cast<std::size_t>(r)]);
  return s;
}

TEST(Linalg, SingularValuesDescending) {
  Matrix m(2, 2);
  m << 3, 0, 0, 4;
  const Vector s = singular_values(m);
  EXPECT_NEAR(s(0), 4, 1e-12);
  EXPECT_NEAR(s(1), 3, 1e-12);
  EXPECT_NEAR(nuclear_norm(m), 7, 1e-12);
}

TEST(Linalg, TruncatedSvdDropsNullDirections) {
  const Matrix a = fixtures::gaussian(10, 2, 1);
  Matrix m(10, 3);
  m << a, a.col(0) + a.col(1);
  const TruncatedSvd svd = truncated_svd(m);
  EXPECT_EQ(svd.sigma.size(), 2);
  EXPECT_TRUE((svd.u.transpose() * svd.u).isIdentity(1e-12));
  EXPECT_TRUE((svd.u * svd.sigma.asDiagonal() * svd.v.transpose()).isApprox(m, 1e-12));
  EXPECT_EQ(orthonormal_column_basis(Matrix::Zero(4, 2)).cols(), 0);
}

TEST(Linalg, PadColumns) {
  const Matrix m = Matrix::Ones(2, 1);
  const Matrix p = pad_columns(m, 3);
  ASSERT_EQ(p.cols(), 3);
  EXPECT_EQ(p.col(0), m.col(0));
  EXPECT_TRUE(p.rightCols(2).isZero());
}

TEST(Linalg, AssignmentMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index rows = 1 + static_cast<Index>(seed % 4);
    const Index cols = rows + static_cast<Index>(seed % 3);
    const Matrix w = fixtures::gaussian(rows, cols, seed + 100);
    const std::vector<Index> got = max_weight_assignment(w);
    ASSERT_EQ(got.size(), static_cast<std::size_t>(rows));
    std::vector<Index> seen = got;
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());

    std::vector<Index> perm(static_cast<std::size_t>(cols));
    std::iota(perm.begin(), perm.end(), Index{0});
    double best = -1e300;
    do {
      best = std::max(best, assignment_weight(w, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(assignment_weight(w, got), best, 1e-12) << "seed " << seed;
  }
}

}  // namespace
}  // namespace resim
