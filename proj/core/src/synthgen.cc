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

#include "resim/synthgen.h"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <string>

#include "resim/evalkit.h"
#include "resim/random.h"
#include "resim/repcore.h"

namespace resim {
namespace {

// Stream tags keep the draws for different roles independent.
enum Stream : std::uint64_t {
  kBase = 1,
  kGroupMap = 2,
  kMemberNoise = 3,
  kChainBasis = 4,
  kChainMix = 5,
  kLogits = 6,
  kOutputNoise = 7,
  kRepNoise = 8,
};

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t a = 0, std::uint64_t b = 0) {
  return hash_combine(hash_combine(hash_combine(seed, stream), a), b);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw MeasureError(FailureKind::kUndefinedInput, message);
}

// Zero-padded so lexicographic order matches model order.
std::string model_id(std::size_t m) {
  std::string digits = std::to_string(m);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "model" + digits;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double peak = logits.row(i).maxCoeff();
    out.row(i) = (logits.row(i).array() - peak).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

}  // namespace

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  // Row-major fill so a matrix's leading rows do not depend on its width.
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

Matrix random_orthogonal(Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, seed));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index c = 0; c < n; ++c) {
    if (r(c, c) < 0) q.col(c) = -q.col(c);
  }
  return q;
}

std::vector<double> divergence_grid(int models, double step) {
  std::vector<double> out(static_cast<std::size_t>(std::max(models, 0)));
  for (int m = 0; m < models; ++m) out[m] = step * (m + 1);
  return out;
}

std::vector<Representation> gen_grouped(const GroupedConfig& c) {
  require(c.instances > 12, "grouped suite needs N > 12");
  require(c.features >= 2, "grouped suite needs D >= 2");
  require(c.groups >= 1 && c.members >= 1, "need at least one group and member");
  require(c.within_noise >= 0.0, "within-group noise must be nonnegative");

  const Matrix base = gaussian_matrix(c.instances, c.features, derive(c.seed, kBase));
  std::vector<Representation> out;
  for (int g = 0; g < c.groups; ++g) {
    const std::uint64_t map_seed = derive(c.seed, kGroupMap, g);
    const Matrix map =
        c.between_map == GroupMap::kOrthogonal
            ? random_orthogonal(c.features, map_seed)
            : Matrix(gaussian_matrix(c.features, c.features, map_seed) /
                     std::sqrt(static_cast<double>(c.features)));
    const Matrix group_base = base * map;
    const std::string tag = "g" + std::to_string(g);
    for (int m = 0; m < c.members; ++m) {
      Matrix member = group_base;
      if (c.within_noise > 0.0) {
        member += c.within_noise *
                  gaussian_matrix(c.instances, c.features,
                                  derive(c.seed, kMemberNoise, g, m));
      }
      out.push_back(Representation::make(std::move(member),
                                         tag + "_m" + std::to_string(m), 0, tag));
    }
  }
  return out;
}

std::vector<Representation> gen_rotation_chain(const RotationChainConfig& c) {
  require(c.layers >= 1, "chain needs at least one layer");
  require(c.features >= 2, "chain needs D >= 2");
  require(c.instances > 2 * c.features, "chain needs N > 2D");
  require(c.angle >= 0.0 && c.layers * c.angle <= std::numbers::pi / 2 + 1e-12,
          "chain needs 0 <= layers * angle <= pi/2");

  // 2D orthonormal, centered columns: the first D span X, the last D span Z.
  const Matrix raw = center_columns(gaussian_matrix(
      c.instances, 2 * c.features, derive(c.seed, kChainBasis)));
  Eigen::HouseholderQR<Matrix> qr(raw);
  const Matrix q = qr.householderQ() * Matrix::Identity(c.instances, 2 * c.features);
  const Matrix mix = normalize_matrix(
      gaussian_matrix(c.features, c.features, derive(c.seed, kChainMix)), 1.0);
  const Matrix x = q.leftCols(c.features) * mix;
  const Matrix z = q.rightCols(c.features) * mix;

  std::vector<Representation> out;
  for (int l = 0; l < c.layers; ++l) {
    const double phi = l * c.angle;
    out.push_back(Representation::make(std::cos(phi) * x + std::sin(phi) * z,
                                       "chain_l" + std::to_string(l + 1), l + 1));
  }
  return out;
}

OutputFamily gen_outputs(const OutputsConfig& c) {
  require(c.instances >= 2, "outputs need N >= 2");
  require(c.features >= 1, "outputs need D >= 1");
  require(c.classes >= 2, "outputs need C >= 2");
  require(!c.divergence.empty(), "need at least one model");

  const Matrix logits = c.logit_scale * gaussian_matrix(c.instances, c.classes,
                                                        derive(c.seed, kLogits));
  const Matrix base = gaussian_matrix(c.instances, c.features, derive(c.seed, kBase));

  OutputFamily family;
  family.labels = predictions(ModelOutputs{softmax_rows(logits), {}});
  for (std::size_t m = 0; m < c.divergence.size(); ++m) {
    const double d = c.divergence[m];
    require(d >= 0.0, "divergence must be nonnegative");
    Matrix out_logits = logits;
    Matrix rep = base;
    if (d > 0.0) {
      out_logits += d * gaussian_matrix(c.instances, c.classes,
                                        derive(c.seed, kOutputNoise, m));
      rep += d * gaussian_matrix(c.instances, c.features,
                                 derive(c.seed, kRepNoise, m));
    }
    family.outputs.push_back(
        ModelOutputs::make(softmax_rows(out_logits), family.labels));
    family.representations.push_back(
        Representation::make(std::move(rep), model_id(m)));
  }
  return family;
}

}  // namespace resim
