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

#ifndef RESIM_EVALKIT_H_
#define RESIM_EVALKIT_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resim/types.h"

// Statistics that turn similarity scores into benchmark results: functional
// output differences, rank correlation, average precision and the conformity
// rates for group and layer tests.

namespace resim {

enum class Orientation { kSimilarity, kDistance };

// A measure score between two representations. `oriented` is the raw value
// (similarity) or its negation (distance), so higher always means more
// similar; it is empty when the measure failed.
struct PairScore {
  std::string left_id;
  std::string right_id;
  MeasureResult raw = MeasureResult::failure(FailureKind::kUndefinedInput, "unset");
  std::optional<double> oriented;

  static PairScore make(std::string left_id, std::string right_id,
                        MeasureResult raw, Orientation orientation);
};

// Argmax per row; ties go to the lowest class index.
std::vector<int> predictions(const ModelOutputs& outputs);

double accuracy(const ModelOutputs& outputs);
double accuracy_diff(const ModelOutputs& a, const ModelOutputs& b);
// Fraction of instances whose predicted classes differ.
double disagreement(const ModelOutputs& a, const ModelOutputs& b);

// Jensen-Shannon divergence in bits, 0 log 0 := 0.
double jensen_shannon(const Vector& p, const Vector& q);
// (1 / 2N) sum_i JSD(a_i || b_i); rows are renormalized first. In [0, 0.5].
double jsd_mean(const ModelOutputs& a, const ModelOutputs& b);

// Values closer than this (relative to the largest magnitude) share a rank.
inline constexpr double kRankTieTolerance = 1e-10;

// 1-based ranks with ties averaged.
Vector average_ranks(const Vector& values, double tie_tolerance = kRankTieTolerance);

// Pearson correlation of average ranks. Throws kUndefinedInput for fewer than
// three values or a constant input.
double spearman(const Vector& x, const Vector& y);

// Average precision with tied scores forming a single threshold step.
double auprc(const Vector& scores, const std::vector<int>& labels);

struct GroupConformity {
  double conformity_rate = 0.0;
  double auprc = 0.0;
  std::size_t failed_pairs = 0;
  std::size_t triples = 0;
};

// `group_of` maps every representation id to its group. Pairs are unordered;
// a pair's oriented score is used for both directions. Failed pairs are left
// out of both statistics.
GroupConformity conformity_groups(const std::vector<PairScore>& pair_scores,
                                  const std::map<std::string, std::string>& group_of);

struct LayerConformity {
  double conformity_rate = 0.0;
  double spearman_vs_distance = 0.0;
};

// Oriented scores keyed by 1-based layer pairs (i, j) with i < j, for all such
// pairs up to `layers`.
LayerConformity conformity_layers(const std::map<std::pair<int, int>, double>& layer_scores,
                                  int layers);

}  // namespace resim

#endif  // RESIM_EVALKIT_H_
