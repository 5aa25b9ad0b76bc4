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

#include "resim/neighbors.h"

#include <algorithm>
#include <iterator>
#include <vector>

namespace resim {
namespace {

struct NeighborPair {
  NeighborLists left;
  NeighborLists right;
};

NeighborPair both_knn(const Matrix& a, const Matrix& b, int k) {
  require_same_instances(a, b);
  return {cosine_knn(a, k), cosine_knn(b, k)};
}

std::vector<Index> sorted(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double jaccard_knn(const Matrix& a, const Matrix& b, int k) {
  const NeighborPair knn = both_knn(a, b, k);
  double total = 0.0;
  std::vector<Index> common;
  for (Index i = 0; i < a.rows(); ++i) {
    const auto left = sorted(knn.left.of(i));
    const auto right = sorted(knn.right.of(i));
    common.clear();
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(common));
    const double inter = static_cast<double>(common.size());
    total += inter / (2.0 * k - inter);
  }
  return total / static_cast<double>(a.rows());
}

double rank_sim(const Matrix& a, const Matrix& b, int k) {
  const NeighborPair knn = both_knn(a, b, k);
  double harmonic = 0.0;
  for (int r = 1; r <= k; ++r) harmonic += 1.0 / r;

  double total = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    const auto& left = knn.left.of(i);
    const auto& right = knn.right.of(i);
    double score = 0.0;
    for (std::size_t ra = 0; ra < left.size(); ++ra) {
      auto it = std::find(right.begin(), right.end(), left[ra]);
      if (it == right.end()) continue;
      const auto rb = static_cast<std::size_t>(it - right.begin());
      score += 2.0 / static_cast<double>(ra + 1 + rb + 1);
    }
    total += score / harmonic;
  }
  return total / static_cast<double>(a.rows());
}

double second_order_cosine(const Matrix& a, const Matrix& b, int k) {
  const NeighborPair knn = both_knn(a, b, k);
  const Matrix ua = normalize_rows(a);
  const Matrix ub = normalize_rows(b);

  double total = 0.0;
  Index used = 0;
  std::vector<Index> hood;
  for (Index i = 0; i < a.rows(); ++i) {
    const auto left = sorted(knn.left.of(i));
    const auto right = sorted(knn.right.of(i));
    hood.clear();
    std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                   std::back_inserter(hood));
    Vector sa(static_cast<Index>(hood.size()));
    Vector sb(static_cast<Index>(hood.size()));
    for (std::size_t t = 0; t < hood.size(); ++t) {
      sa(static_cast<Index>(t)) = ua.row(i).dot(ua.row(hood[t]));
      sb(static_cast<Index>(t)) = ub.row(i).dot(ub.row(hood[t]));
    }
    const double na = sa.norm(), nb = sb.norm();
    if (!(na > 0.0) || !(nb > 0.0)) continue;
    total += std::clamp(sa.dot(sb) / (na * nb), -1.0, 1.0);
    ++used;
  }
  if (used == 0) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "every second-order similarity profile is zero");
  }
  return total / static_cast<double>(used);
}

}  // namespace resim
