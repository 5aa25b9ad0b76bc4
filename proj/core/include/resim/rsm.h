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

#ifndef RESIM_RSM_H_
#define RESIM_RSM_H_

#include "resim/types.h"

namespace resim {

// Linear CKA on column-centered inputs. In [0, 1].
double cka_linear(const Matrix& a, const Matrix& b);

// Spearman correlation between the upper triangles of the row-wise Pearson
// RSMs. Needs N >= 4.
double rsa(const Matrix& a, const Matrix& b);

// Frobenius norm of the difference of the Euclidean RSMs (unnormalized).
double rsm_norm_diff(const Matrix& a, const Matrix& b);

// Distance correlation of Szekely et al. In [0, 1].
double dist_corr(const Matrix& a, const Matrix& b);

// ||U^T V||_F^2 / max(rank_a, rank_b) for the retained left singular vectors.
double eigenspace_overlap(const Matrix& a, const Matrix& b);

// GULP distance with ridge weight `lambda` (0 uses a pseudo-inverse). Inputs
// are column-centered and rescaled to Frobenius norm sqrt(N).
double gulp(const Matrix& a, const Matrix& b, double lambda = 0.0);

}  // namespace resim

#endif  // RESIM_RSM_H_
