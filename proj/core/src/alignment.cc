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

#include "resim/alignment.h"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "resim/linalg.h"
#include "resim/repcore.h"

namespace resim {
namespace {

// Centered, unit-Frobenius preprocessing shared by the shape metrics.
double shape_nuclear_norm(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix x = normalize_matrix(center_columns(a), 1.0);
  const Matrix y = normalize_matrix(center_columns(b), 1.0);
  return std::clamp(nuclear_norm(x.transpose() * y), 0.0, 1.0);
}

double safe_sqrt(double v) { return std::sqrt(std::max(0.0, v)); }

// Columns scaled to zero mean and unit norm; constant columns become zero.
Matrix standardized_columns(const Matrix& m) {
  Matrix z = center_columns(m);
  for (Index c = 0; c < z.cols(); ++c) {
    const double norm = z.col(c).norm();
    if (norm > 0.0) {
      z.col(c) /= norm;
    } else {
      z.col(c).setZero();
    }
  }
  return z;
}

}  // namespace

double orth_procrustes(const Matrix& a, const Matrix& b) {
  return safe_sqrt(2.0 - 2.0 * shape_nuclear_norm(a, b));
}

double angular_shape(const Matrix& a, const Matrix& b) {
  return std::acos(shape_nuclear_norm(a, b));
}

double procrustes_size_shape(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix x = center_columns(a);
  const Matrix y = center_columns(b);
  return safe_sqrt(x.squaredNorm() + y.squaredNorm() -
                   2.0 * nuclear_norm(x.transpose() * y));
}

double perm_procrustes(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Index width = std::max(a.cols(), b.cols());
  const Matrix x = pad_columns(a, width);
  const Matrix y = pad_columns(b, width);
  const Matrix gain = x.transpose() * y;
  const std::vector<Index> match = max_weight_assignment(gain);
  // Residual of the matched columns; avoids cancellation near zero.
  double residual = 0.0;
  for (Index d = 0; d < width; ++d) residual += (x.col(d) - y.col(match[d])).squaredNorm();
  return std::sqrt(residual);
}

double linreg_r2(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix x = center_columns(a);
  const Matrix y = center_columns(b);
  const double total = y.squaredNorm();
  if (!(total > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "regression target has no variance");
  }
  const Matrix basis = orthonormal_column_basis(x);
  if (basis.cols() == 0) return 0.0;
  const double explained = (basis.transpose() * y).squaredNorm();
  return std::clamp(explained / total, 0.0, 1.0);
}

double aligned_cosine(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Index width = std::max(a.cols(), b.cols());
  const Matrix x = pad_columns(a, width);
  const Matrix y = pad_columns(b, width);
  require_finite(y.transpose() * x, "alignment cross-product");

  Eigen::BDCSVD<Matrix> svd(y.transpose() * x,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success || !svd.matrixU().allFinite()) {
    throw MeasureError(FailureKind::kNumerical, "SVD did not converge");
  }
  const Matrix rotation = svd.matrixU() * svd.matrixV().transpose();
  const Matrix aligned = normalize_rows(y * rotation);
  const Matrix target = normalize_rows(x);
  return std::clamp(target.cwiseProduct(aligned).rowwise().sum().mean(), -1.0,
                    1.0);
}

Matrix column_correlations(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix c = standardized_columns(a).transpose() * standardized_columns(b);
  return c.cwiseMax(-1.0).cwiseMin(1.0);
}

double hard_corr_match(const Matrix& a, const Matrix& b) {
  Matrix corr = column_correlations(a, b);
  if (corr.rows() > corr.cols()) corr.transposeInPlace();
  const std::vector<Index> match = max_weight_assignment(corr);
  double total = 0.0;
  for (Index r = 0; r < corr.rows(); ++r) total += corr(r, match[r]);
  return total / static_cast<double>(corr.rows());
}

double soft_corr_match(const Matrix& a, const Matrix& b) {
  const Matrix corr = column_correlations(a, b);
  return corr.rowwise().maxCoeff().mean();
}

}  // namespace resim
