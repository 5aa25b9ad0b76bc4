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

#ifndef RESIM_ALIGNMENT_H_
#define RESIM_ALIGNMENT_H_

#include "resim/types.h"

// Measures that align the two representations with an explicit map before
// comparing them. Inputs must share the instance count; column counts may
// differ and are zero-padded where a square map is required. All functions
// throw MeasureError on failure.

namespace resim {

// sqrt(2 - 2 ||X^T Y||_*) on centered, unit-Frobenius inputs. In [0, 2].
double orth_procrustes(const Matrix& a, const Matrix& b);

// arccos(||X^T Y||_*) on centered, unit-Frobenius inputs. In [0, pi/2].
double angular_shape(const Matrix& a, const Matrix& b);

// sqrt(||X||^2 + ||Y||^2 - 2 ||X^T Y||_*) on centered inputs (no rescaling).
double procrustes_size_shape(const Matrix& a, const Matrix& b);

// Procrustes distance restricted to column permutations of the raw inputs.
double perm_procrustes(const Matrix& a, const Matrix& b);

// R^2 of the least-squares prediction of centered b from centered a.
// Asymmetric.
double linreg_r2(const Matrix& a, const Matrix& b);

// Mean instance-wise cosine between a and b after rotating b onto a.
double aligned_cosine(const Matrix& a, const Matrix& b);

// Column-wise Pearson correlations, one-to-one matched to maximize the total;
// returns the mean matched correlation. Constant columns correlate 0.
double hard_corr_match(const Matrix& a, const Matrix& b);

// For each column of a, its best correlation with any column of b; mean over
// a's columns. Asymmetric.
double soft_corr_match(const Matrix& a, const Matrix& b);

// D x D' Pearson correlations between columns; 0 where a column is constant.
Matrix column_correlations(const Matrix& a, const Matrix& b);

}  // namespace resim

#endif  // RESIM_ALIGNMENT_H_
