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

#include <Eigen/SVD>

#include <limits>

namespace resim {
namespace {

template <int Options>
Eigen::BDCSVD<Matrix> checked_svd(const Matrix& m) {
  require_finite(m, "SVD input");
  Eigen::BDCSVD<Matrix> svd(m, Options);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw MeasureError(FailureKind::kNumerical, "SVD did not converge");
  }
  return svd;
}

}  // namespace

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  return checked_svd<0>(m).singularValues();
}

double nuclear_norm(const Matrix& m) { return singular_values(m).sum(); }

TruncatedSvd truncated_svd(const Matrix& m, double rel_tol) {
  TruncatedSvd out;
  if (m.size() == 0) {
    out.u = Matrix(m.rows(), 0);
    out.v = Matrix(m.cols(), 0);
    return out;
  }
  auto svd = checked_svd<Eigen::ComputeThinU | Eigen::ComputeThinV>(m);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cutoff = rel_tol * s(0);
    while (rank < s.size() && s(rank) > cutoff) ++rank;
  }
  out.u = svd.matrixU().leftCols(rank);
  out.sigma = s.head(rank);
  out.v = svd.matrixV().leftCols(rank);
  return out;
}

Matrix orthonormal_column_basis(const Matrix& m, double rel_tol) {
  return truncated_svd(m, rel_tol).u;
}

Matrix pad_columns(const Matrix& m, Index cols) {
  if (m.cols() >= cols) return m;
  Matrix out = Matrix::Zero(m.rows(), cols);
  out.leftCols(m.cols()) = m;
  return out;
}

std::vector<Index> max_weight_assignment(const Matrix& weights) {
  const Index rows = weights.rows();
  const Index cols = weights.cols();
  if (rows > cols) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "assignment needs rows <= cols");
  }
  if (rows == 0) return {};
  require_finite(weights, "assignment weights");

  // Shortest augmenting path formulation on costs = -weights, 1-based with a
  // virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<Index> match(cols + 1, 0), way(cols + 1, 0);
  for (Index i = 1; i <= rows; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = match[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> assignment(rows, -1);
  for (Index j = 1; j <= cols; ++j) {
    if (match[j] != 0) assignment[match[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace resim
