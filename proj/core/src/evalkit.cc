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

#include "resim/evalkit.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "resim/repcore.h"

namespace resim {
namespace {

void require_same_shape(const ModelOutputs& a, const ModelOutputs& b) {
  if (a.probs.rows() != b.probs.rows() || a.probs.cols() != b.probs.cols()) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "model outputs have different shapes");
  }
  if (a.probs.rows() == 0) {
    throw MeasureError(FailureKind::kUndefinedInput, "empty model outputs");
  }
}

double plogp_ratio(double p, double m) {
  return p > 0.0 ? p * std::log2(p / m) : 0.0;
}

std::vector<Index> order_by(const Vector& values, bool descending) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return descending ? values(a) > values(b) : values(a) < values(b);
  });
  return order;
}


// Exact fraction accumulator; `exact` drops to false on int64 overflow.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool exact = true;

  void add(std::int64_t n, std::int64_t d) {
    if (!exact) return;
    const std::int64_t g = std::gcd(n, d);
    n /= g;
    d /= g;
    std::int64_t a = 0, b = 0, sum = 0, den_out = 0;
    if (__builtin_mul_overflow(num, d, &a) || __builtin_mul_overflow(n, den, &b) ||
        __builtin_add_overflow(a, b, &sum) || __builtin_mul_overflow(den, d, &den_out)) {
      exact = false;
      return;
    }
    const std::int64_t h = std::gcd(sum, den_out);
    num = sum / h;
    den = den_out / h;
  }
};

}  // namespace

PairScore PairScore::make(std::string left_id, std::string right_id,
                          MeasureResult raw, Orientation orientation) {
  PairScore p{std::move(left_id), std::move(right_id), raw, std::nullopt};
  if (raw.ok()) {
    p.oriented = orientation == Orientation::kSimilarity ? raw.value()
                                                         : -raw.value();
  }
  return p;
}

std::vector<int> predictions(const ModelOutputs& outputs) {
  std::vector<int> out(static_cast<std::size_t>(outputs.probs.rows()));
  for (Index i = 0; i < outputs.probs.rows(); ++i) {
    Index best = 0;
    // maxCoeff returns the first maximum, i.e. the lowest index on ties.
    outputs.probs.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

double accuracy(const ModelOutputs& outputs) {
  if (outputs.probs.rows() == 0) {
    throw MeasureError(FailureKind::kUndefinedInput, "empty model outputs");
  }
  const std::vector<int> pred = predictions(outputs);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    hits += pred[i] == outputs.labels[i] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double accuracy_diff(const ModelOutputs& a, const ModelOutputs& b) {
  return std::abs(accuracy(a) - accuracy(b));
}

double disagreement(const ModelOutputs& a, const ModelOutputs& b) {
  require_same_shape(a, b);
  const std::vector<int> pa = predictions(a);
  const std::vector<int> pb = predictions(b);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) differ += pa[i] != pb[i] ? 1 : 0;
  return static_cast<double>(differ) / static_cast<double>(pa.size());
}

double jensen_shannon(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "distributions have different lengths");
  }
  double kl_p = 0.0, kl_q = 0.0;
  for (Index c = 0; c < p.size(); ++c) {
    const double m = 0.5 * (p(c) + q(c));
    kl_p += plogp_ratio(p(c), m);
    kl_q += plogp_ratio(q(c), m);
  }
  return std::max(0.0, 0.5 * kl_p + 0.5 * kl_q);
}

double jsd_mean(const ModelOutputs& a, const ModelOutputs& b) {
  require_same_shape(a, b);
  if ((a.probs.array() < 0.0).any() || (b.probs.array() < 0.0).any()) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "negative class probabilities");
  }
  const Index n = a.probs.rows();
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double sa = a.probs.row(i).sum();
    const double sb = b.probs.row(i).sum();
    if (!(sa > 0.0) || !(sb > 0.0)) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "probability row sums to zero");
    }
    total += jensen_shannon(a.probs.row(i).transpose() / sa,
                            b.probs.row(i).transpose() / sb);
  }
  return total / (2.0 * static_cast<double>(n));
}

Vector average_ranks(const Vector& values, double tie_tolerance) {
  const Index n = values.size();
  const std::vector<Index> order = order_by(values, /*descending=*/false);
  const double scale = n > 0 ? values.cwiseAbs().maxCoeff() : 0.0;
  const double slack = tie_tolerance * scale;
  Vector ranks(n);
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && values(order[end]) - values(order[start]) <= slack) ++end;
    // Positions start..end-1 hold ranks start+1..end.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (Index t = start; t < end; ++t) ranks(order[t]) = rank;
    start = end;
  }
  return ranks;
}

double spearman(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "spearman inputs differ in length");
  }
  if (x.size() < 3) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "spearman needs at least three values");
  }
  require_finite(x, "spearman input");
  require_finite(y, "spearman input");
  const Vector rx = average_ranks(x);
  const Vector ry = average_ranks(y);
  const Vector cx = rx.array() - rx.mean();
  const Vector cy = ry.array() - ry.mean();
  const double nx = cx.norm(), ny = cy.norm();
  if (!(nx > 0.0) || !(ny > 0.0)) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "spearman correlation of a constant input");
  }
  return std::clamp(cx.dot(cy) / (nx * ny), -1.0, 1.0);
}

double auprc(const Vector& scores, const std::vector<int>& labels) {
  if (static_cast<Index>(labels.size()) != scores.size()) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "scores and labels differ in length");
  }
  require_finite(scores, "AUPRC scores");
  const auto positives =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  if (positives == 0 || positives == labels.size()) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "AUPRC needs both positive and negative labels");
  }
  const std::vector<Index> order = order_by(scores, /*descending=*/true);
  const Index n = scores.size();
  // Exact when the fraction fits in 64 bits, floating point otherwise.
  Fraction exact;
  double ap = 0.0;
  std::size_t tp = 0, seen = 0;
  Index start = 0;
  while (start < n) {
    Index end = start;
    std::size_t group_tp = 0;
    while (end < n && scores(order[end]) == scores(order[start])) {
      group_tp += labels[static_cast<std::size_t>(order[end])] == 1 ? 1 : 0;
      ++end;
    }
    tp += group_tp;
    seen += static_cast<std::size_t>(end - start);
    if (group_tp > 0) {
      ap += static_cast<double>(group_tp) * static_cast<double>(tp) / static_cast<double>(seen);
      std::int64_t n = 0;
      if (__builtin_mul_overflow(static_cast<std::int64_t>(group_tp),
                                 static_cast<std::int64_t>(tp), &n)) {
        exact.exact = false;
      }
      exact.add(n, static_cast<std::int64_t>(seen));
    }
    start = end;
  }
  std::int64_t den = 0;
  if (exact.exact &&
      !__builtin_mul_overflow(exact.den, static_cast<std::int64_t>(positives), &den)) {
    const std::int64_t g = std::gcd(exact.num, den);
    return static_cast<double>(exact.num / g) / static_cast<double>(den / g);
  }
  return ap / static_cast<double>(positives);
}

GroupConformity conformity_groups(const std::vector<PairScore>& pair_scores,
                                  const std::map<std::string, std::string>& group_of) {
  std::map<std::string, std::size_t> group_sizes;
  for (const auto& [id, group] : group_of) ++group_sizes[group];
  if (group_sizes.size() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "group test needs at least two groups");
  }
  for (const auto& [group, size] : group_sizes) {
    if (size < 2) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "group '" + group + "' has fewer than two members");
    }
  }

  std::vector<std::string> ids;
  for (const auto& [id, group] : group_of) ids.push_back(id);
  const std::size_t n = ids.size();
  auto index_of = [&](const std::string& id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "pair refers to unknown representation '" + id + "'");
    }
    return static_cast<std::size_t>(it - ids.begin());
  };

  std::vector<std::optional<double>> score(n * n);
  std::vector<char> present(n * n, 0);
  GroupConformity out;
  Vector pair_values(static_cast<Index>(pair_scores.size()));
  std::vector<int> pair_labels;
  Index used = 0;
  for (const PairScore& p : pair_scores) {
    const std::size_t a = index_of(p.left_id), b = index_of(p.right_id);
    if (a == b) continue;
    present[a * n + b] = present[b * n + a] = 1;
    score[a * n + b] = score[b * n + a] = p.oriented;
    if (!p.oriented) {
      ++out.failed_pairs;
      continue;
    }
    pair_values(used++) = *p.oriented;
    pair_labels.push_back(group_of.at(p.left_id) == group_of.at(p.right_id) ? 1 : 0);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!present[a * n + b]) {
        throw MeasureError(FailureKind::kUndefinedInput,
                           "missing pair (" + ids[a] + ", " + ids[b] + ")");
      }
    }
  }

  std::size_t conforming = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::string& ga = group_of.at(ids[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || group_of.at(ids[b]) != ga || !score[a * n + b]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (group_of.at(ids[c]) == ga || !score[a * n + c]) continue;
        ++out.triples;
        conforming += *score[a * n + c] <= *score[a * n + b] ? 1 : 0;
      }
    }
  }
  if (out.triples == 0) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "no complete comparison triples remain");
  }
  out.conformity_rate =
      static_cast<double>(conforming) / static_cast<double>(out.triples);
  out.auprc = auprc(pair_values.head(used), pair_labels);
  return out;
}

LayerConformity conformity_layers(const std::map<std::pair<int, int>, double>& layer_scores,
                                  int layers) {
  if (layers < 3) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "layer test needs at least three layers");
  }
  auto at = [&](int i, int j) {
    auto it = layer_scores.find({i, j});
    if (it == layer_scores.end()) {
      throw MeasureError(FailureKind::kUndefinedInput,
                         "missing layer pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
    }
    return it->second;
  };

  const Index pairs = layers * (layers - 1) / 2;
  Vector distance(pairs), gap(pairs);
  Index w = 0;
  for (int i = 1; i <= layers; ++i) {
    for (int j = i + 1; j <= layers; ++j) {
      distance(w) = -at(i, j);
      gap(w) = j - i;
      ++w;
    }
  }

  std::size_t total = 0, conforming = 0;
  for (int i = 1; i <= layers; ++i) {
    for (int j = i; j <= layers; ++j) {
      for (int k = j + 1; k <= layers; ++k) {
        for (int l = k; l <= layers; ++l) {
          if (i == j && k == l) continue;
          ++total;
          conforming += at(i, l) <= at(j, k) ? 1 : 0;
        }
      }
    }
  }

  LayerConformity out;
  out.conformity_rate = static_cast<double>(conforming) / static_cast<double>(total);
  out.spearman_vs_distance = spearman(distance, gap);
  return out;
}

}  // namespace resim
