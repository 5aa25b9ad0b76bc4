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

#include "resim/cca.h"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "resim/linalg.h"
#include "resim/repcore.h"

namespace resim {
namespace {

// Leading singular directions (scaled by their singular values) that hold
// `kept` of the total squared spectrum.
Matrix reduce_to_variance(const Matrix& centered, double kept) {
  const TruncatedSvd svd = truncated_svd(centered);
  if (svd.sigma.size() == 0) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "SVCCA input has rank zero");
  }
  const Vector energy = svd.sigma.array().square();
  const double total = energy.sum();
  double running = 0.0;
  Index keep = 0;
  while (keep < energy.size()) {
    running += energy(keep++);
    if (running >= kept * total) break;
  }
  return svd.u.leftCols(keep) * svd.sigma.head(keep).asDiagonal();
}

}  // namespace

CcaSolution cca_core(const Matrix& x, const Matrix& y) {
  require_same_instances(x, y);
  if (x.rows() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput, "CCA needs N > 1");
  }
  const TruncatedSvd sx = truncated_svd(x);
  const TruncatedSvd sy = truncated_svd(y);
  if (sx.sigma.size() == 0 || sy.sigma.size() == 0) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "CCA input has numerical rank zero");
  }

  const Matrix overlap = sx.u.transpose() * sy.u;
  Eigen::BDCSVD<Matrix> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw MeasureError(FailureKind::kNumerical, "CCA SVD did not converge");
  }
  const Index k = std::min(sx.sigma.size(), sy.sigma.size());

  CcaSolution sol;
  sol.correlations = svd.singularValues().head(k).cwiseMax(0.0).cwiseMin(1.0);
  const Matrix rotation = svd.matrixU().leftCols(k);
  sol.variates_left = sx.u * rotation;
  sol.directions_left =
      sx.v * sx.sigma.cwiseInverse().asDiagonal() * rotation;
  return sol;
}

double svcca(const Matrix& a, const Matrix& b, double variance_kept) {
  require_same_instances(a, b);
  if (!(variance_kept > 0.0 && variance_kept <= 1.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "variance threshold must lie in (0, 1]");
  }
  const Matrix ra = reduce_to_variance(center_columns(a), variance_kept);
  const Matrix rb = reduce_to_variance(center_columns(b), variance_kept);
  return cca_core(ra, rb).correlations.mean();
}

double pwcca(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix x = center_columns(a);
  const CcaSolution sol = cca_core(x, center_columns(b));
  const Vector weights =
      (sol.variates_left.transpose() * x).cwiseAbs().rowwise().sum();
  const double mass = weights.sum();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw MeasureError(FailureKind::kNumerical,
                       "PWCCA projection weights have zero mass");
  }
  return std::clamp(weights.dot(sol.correlations) / mass, 0.0, 1.0);
}

}  // namespace resim
