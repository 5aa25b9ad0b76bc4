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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace resim {

Matrix center_columns(const Matrix& m) {
  if (m.rows() == 0) return m;
  return m.rowwise() - m.colwise().mean();
}

Matrix normalize_matrix(const Matrix& m, double target) {
  const double norm = m.norm();
  if (!(norm > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "cannot normalize a zero matrix");
  }
  return m * (target / norm);
}

Matrix normalize_rows(const Matrix& m) {
  Matrix out = m;
  for (Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (!(norm > 0.0)) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "zero row " + std::to_string(i) +
                             " has no direction");
    }
    out.row(i) /= norm;
  }
  return out;
}

NeighborLists cosine_knn(const Matrix& m, int k) {
  if (k < 1) {
    throw MeasureError(FailureKind::kUndefinedInput, "k must be positive");
  }
  const Index n = m.rows();
  if (n <= k) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "need more than k=" + std::to_string(k) +
                           " instances, got " + std::to_string(n));
  }
  const Matrix unit = normalize_rows(m);
  const Matrix cos = unit * unit.transpose();

  std::vector<std::vector<Index>> lists(n);
  std::vector<Index> order(n - 1);
  for (Index i = 0; i < n; ++i) {
    Index w = 0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) order[w++] = j;
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Index a, Index b) {
                        const double ca = cos(i, a), cb = cos(i, b);
                        if (ca != cb) return ca > cb;
                        return a < b;
                      });
    lists[i].assign(order.begin(), order.begin() + k);
  }
  return NeighborLists(k, std::move(lists));
}

Matrix euclidean_rsm(const Matrix& m) {
  const Index n = m.rows();
  // Instances as columns for contiguous access.
  const Matrix t = m.transpose();
  Matrix d = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const double dist = (t.col(i) - t.col(j)).norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

Matrix pearson_row_rsm(const Matrix& m) {
  if (m.cols() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "row-wise Pearson correlation needs D >= 2");
  }
  Matrix z = m.colwise() - m.rowwise().mean();
  for (Index i = 0; i < z.rows(); ++i) {
    const double norm = z.row(i).norm();
    if (!(norm > 0.0)) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "row " + std::to_string(i) + " is constant");
    }
    z.row(i) /= norm;
  }
  Matrix c = z * z.transpose();
  c = c.cwiseMax(-1.0).cwiseMin(1.0);
  c.diagonal().setOnes();
  return c;
}

Vector upper_triangle(const Matrix& square) {
  const Index n = square.rows();
  Vector out(n * (n - 1) / 2);
  Index w = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) out(w++) = square(i, j);
  }
  return out;
}

double pearson(const Vector& a, const Vector& b) {
  const Vector x = a.array() - a.mean();
  const Vector y = b.array() - b.mean();
  const double nx = x.norm(), ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0)) return 0.0;
  return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

}  // namespace resim
