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

#ifndef RESIM_REPCORE_H_
#define RESIM_REPCORE_H_

#include <vector>

#include "resim/types.h"

namespace resim {

inline constexpr int kDefaultNeighbors = 10;

// Subtracts each column's mean.
Matrix center_columns(const Matrix& m);

// Rescales so the Frobenius norm equals `target`. Throws kUndefinedInput for
// a zero matrix.
Matrix normalize_matrix(const Matrix& m, double target = 1.0);

// Rows scaled to unit L2 norm. Throws kUndefinedInput on a zero row.
Matrix normalize_rows(const Matrix& m);

// For each instance, the k other instances with the largest cosine similarity
// in descending order; ties go to the lower row index.
class NeighborLists {
 public:
  NeighborLists(int k, std::vector<std::vector<Index>> lists)
      : k_(k), lists_(std::move(lists)) {}

  int k() const { return k_; }
  Index size() const { return static_cast<Index>(lists_.size()); }
  // Neighbors of instance i; element r has rank r + 1.
  const std::vector<Index>& of(Index i) const { return lists_[i]; }

  bool operator==(const NeighborLists&) const = default;

 private:
  int k_;
  std::vector<std::vector<Index>> lists_;
};

// Throws kUndefinedInput if N <= k, k < 1 or a row is zero.
NeighborLists cosine_knn(const Matrix& m, int k = kDefaultNeighbors);

// Pairwise Euclidean distances between rows.
Matrix euclidean_rsm(const Matrix& m);

// Pairwise Pearson correlations between rows. Needs D >= 2 and non-constant
// rows.
Matrix pearson_row_rsm(const Matrix& m);

// Entries strictly above the diagonal, row by row.
Vector upper_triangle(const Matrix& square);

// Pearson correlation between two vectors; 0 if either is constant.
double pearson(const Vector& a, const Vector& b);

}  // namespace resim

#endif  // RESIM_REPCORE_H_
