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

#include "resim/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "resim/repcore.h"

namespace resim {

double magnitude(const Matrix& m) { return m.rowwise().norm().mean(); }

double concentricity(const Matrix& m) {
  const Eigen::RowVectorXd center = m.colwise().mean();
  const double center_norm = center.norm();
  if (!(center_norm > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "concentricity needs a nonzero mean row");
  }
  const Matrix unit = normalize_rows(m);
  return (unit * (center.transpose() / center_norm)).mean();
}

double uniformity(const Matrix& m, double t) {
  if (m.rows() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "uniformity needs at least two instances");
  }
  const Matrix unit = normalize_rows(m);
  const Matrix gram = unit * unit.transpose();
  const Index n = m.rows();
  // ||u - v||^2 = 2 - 2 u.v for unit rows; log-mean-exp over i != j.
  double peak = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sq = std::max(0.0, 2.0 - 2.0 * gram(i, j));
      peak = std::max(peak, -t * sq);
    }
  }
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sq = std::max(0.0, 2.0 - 2.0 * gram(i, j));
      acc += std::exp(-t * sq - peak);
    }
  }
  return peak + std::log(acc / static_cast<double>(n * (n - 1)));
}

double magnitude_diff(const Matrix& a, const Matrix& b) {
  return std::abs(magnitude(a) - magnitude(b));
}

double concentricity_diff(const Matrix& a, const Matrix& b) {
  return std::abs(concentricity(a) - concentricity(b));
}

double uniformity_diff(const Matrix& a, const Matrix& b, double t) {
  return std::abs(uniformity(a, t) - uniformity(b, t));
}

}  // namespace resim
