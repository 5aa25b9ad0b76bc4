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

#include "resim/rsm.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "resim/evalkit.h"
#include "resim/linalg.h"
#include "resim/repcore.h"

namespace resim {
namespace {

// Tiny negative round-off below this magnitude is clamped to zero before
// taking square roots.
constexpr double kNegativeSlack = 1e-10;

double clamped_sqrt(double v) {
  if (v < -kNegativeSlack) {
    throw MeasureError(FailureKind::kNumerical,
                       "negative squared distance " + std::to_string(v));
  }
  return std::sqrt(std::max(0.0, v));
}

Matrix double_centered(const Matrix& d) {
  const Vector row_mean = d.rowwise().mean();
  const Eigen::RowVectorXd col_mean = d.colwise().mean();
  const double grand = d.mean();
  Matrix out = d;
  out.colwise() -= row_mean;
  out.rowwise() -= col_mean;
  out.array() += grand;
  return out;
}

// Moore-Penrose inverse of (sigma + lambda I) for symmetric PSD sigma.
Matrix regularized_pinv(const Matrix& sigma, double lambda) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite()) {
    throw MeasureError(FailureKind::kNumerical,
                       "covariance eigendecomposition failed");
  }
  Vector values = eig.eigenvalues().array() + lambda;
  const double top = values.cwiseAbs().maxCoeff();
  const double cutoff = kRankTolerance * top;
  for (Index i = 0; i < values.size(); ++i) {
    values(i) = values(i) > cutoff ? 1.0 / values(i) : 0.0;
  }
  return eig.eigenvectors() * values.asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

double cka_linear(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix x = center_columns(a);
  const Matrix y = center_columns(b);
  double cross, self_x, self_y;
  if (x.rows() < x.cols() + y.cols()) {
    const Matrix k = x * x.transpose();
    const Matrix l = y * y.transpose();
    cross = k.cwiseProduct(l).sum();
    self_x = k.norm();
    self_y = l.norm();
  } else {
    cross = (y.transpose() * x).squaredNorm();
    self_x = (x.transpose() * x).norm();
    self_y = (y.transpose() * y).norm();
  }
  if (!(self_x > 0.0) || !(self_y > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "CKA of a constant representation is undefined");
  }
  return std::clamp(cross / (self_x * self_y), 0.0, 1.0);
}

double rsa(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  if (a.rows() < 4) {
    throw MeasureError(FailureKind::kUndefinedInput, "RSA needs N >= 4");
  }
  return spearman(upper_triangle(pearson_row_rsm(a)),
                  upper_triangle(pearson_row_rsm(b)));
}

double rsm_norm_diff(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  return (euclidean_rsm(a) - euclidean_rsm(b)).norm();
}

double dist_corr(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix da = double_centered(euclidean_rsm(a));
  const Matrix db = double_centered(euclidean_rsm(b));
  const double cov = da.cwiseProduct(db).mean();
  const double var_a = da.squaredNorm() / static_cast<double>(da.size());
  const double var_b = db.squaredNorm() / static_cast<double>(db.size());
  if (!(var_a > 0.0) || !(var_b > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "distance variance is zero (all rows identical)");
  }
  const double ratio = std::max(0.0, cov) / std::sqrt(var_a * var_b);
  return std::min(1.0, std::sqrt(ratio));
}

double eigenspace_overlap(const Matrix& a, const Matrix& b) {
  require_same_instances(a, b);
  const Matrix u = orthonormal_column_basis(a);
  const Matrix v = orthonormal_column_basis(b);
  const Index rank = std::max(u.cols(), v.cols());
  if (rank == 0) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "eigenspace overlap of zero matrices is undefined");
  }
  return std::clamp((u.transpose() * v).squaredNorm() / static_cast<double>(rank),
                    0.0, 1.0);
}

double gulp(const Matrix& a, const Matrix& b, double lambda) {
  require_same_instances(a, b);
  if (!(lambda >= 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "GULP regularization must be nonnegative");
  }
  const double n = static_cast<double>(a.rows());
  const Matrix x = normalize_matrix(center_columns(a), std::sqrt(n));
  const Matrix y = normalize_matrix(center_columns(b), std::sqrt(n));

  const Matrix cov_x = x.transpose() * x / n;
  const Matrix cov_y = y.transpose() * y / n;
  const Matrix cov_xy = x.transpose() * y / n;
  const Matrix inv_x = regularized_pinv(cov_x, lambda);
  const Matrix inv_y = regularized_pinv(cov_y, lambda);

  const Matrix px = inv_x * cov_x;
  const Matrix py = inv_y * cov_y;
  const double self_x = (px * px).trace();
  const double self_y = (py * py).trace();
  const double cross =
      (inv_x * cov_xy * inv_y * cov_xy.transpose()).trace();
  return clamped_sqrt(self_x + self_y - 2.0 * cross);
}

}  // namespace resim
