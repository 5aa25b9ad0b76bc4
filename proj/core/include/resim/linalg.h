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

#ifndef RESIM_LINALG_H_
#define RESIM_LINALG_H_

#include <vector>

#include "resim/types.h"

namespace resim {

// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankTolerance = 1e-10;

// Singular values in descending order. Throws MeasureError(kNumerical) if the
// decomposition fails or produces non-finite values.
Vector singular_values(const Matrix& m);

double nuclear_norm(const Matrix& m);

// Thin left singular vectors and singular values, truncated at
// rel_tol * sigma_max. A zero matrix yields zero columns.
struct TruncatedSvd {
  Matrix u;          // N x r, orthonormal columns.
  Vector sigma;      // r, descending.
  Matrix v;          // D x r.
};
TruncatedSvd truncated_svd(const Matrix& m, double rel_tol = kRankTolerance);

// Orthonormal basis of the column space.
Matrix orthonormal_column_basis(const Matrix& m, double rel_tol = kRankTolerance);

// Appends zero columns so the result has `cols` columns.
Matrix pad_columns(const Matrix& m, Index cols);

// Maximum-weight one-to-one assignment of rows to columns (rows <= cols).
// Returns the column assigned to each row. Hungarian method, O(n^3).
std::vector<Index> max_weight_assignment(const Matrix& weights);

}  // namespace resim

#endif  // RESIM_LINALG_H_
