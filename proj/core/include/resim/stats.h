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

#ifndef RESIM_STATS_H_
#define RESIM_STATS_H_

#include "resim/types.h"

namespace resim {

inline constexpr double kUniformityTemperature = 2.0;

// Mean L2 row norm.
double magnitude(const Matrix& m);
// Mean cosine between each row and the mean row.
double concentricity(const Matrix& m);
// log of the mean over ordered pairs i != j of exp(-t ||r_i - r_j||^2) on
// unit-normalized rows.
double uniformity(const Matrix& m, double t = kUniformityTemperature);

double magnitude_diff(const Matrix& a, const Matrix& b);
double concentricity_diff(const Matrix& a, const Matrix& b);
double uniformity_diff(const Matrix& a, const Matrix& b,
                       double t = kUniformityTemperature);

}  // namespace resim

#endif  // RESIM_STATS_H_
