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

#ifndef RESIM_CCA_H_
#define RESIM_CCA_H_

#include "resim/types.h"

namespace resim {

inline constexpr double kSvccaVarianceKept = 0.99;

struct CcaSolution {
  // Canonical correlations, descending, clamped to [0, 1].
  Vector correlations;
  // D x k canonical weights for the first argument: x * directions_left are
  // the canonical variates (unit norm).
  Matrix directions_left;
  // N x k canonical variates in the first argument's column space.
  Matrix variates_left;
};

// Both inputs must already be column-centered. Throws kUndefinedInput if
// either has numerical rank zero.
CcaSolution cca_core(const Matrix& x, const Matrix& y);

// Mean canonical correlation after reducing each input to the leading
// singular directions holding `variance_kept` of the squared spectrum.
double svcca(const Matrix& a, const Matrix& b,
             double variance_kept = kSvccaVarianceKept);

// Projection-weighted mean canonical correlation. Asymmetric: weights come
// from how strongly the first argument's columns load on each variate.
double pwcca(const Matrix& a, const Matrix& b);

}  // namespace resim

#endif  // RESIM_CCA_H_
