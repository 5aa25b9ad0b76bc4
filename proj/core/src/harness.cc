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

#include "resim/harness.h"

#include <algorithm>
#include <any>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "resim/evalkit.h"
#include "resim/io.h"

namespace resim {
namespace {

using PairIndex = std::pair<std::size_t, std::size_t>;

int worker_count(int jobs, std::size_t items) {
  std::size_t n = jobs > 0 ? static_cast<std::size_t>(jobs)
                           : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, items);
  return static_cast<int>(std::max<std::size_t>(n, 1));
}

// Runs body(i) for i in [0, count). Each item writes only its own slot, so
// the outcome does not depend on the number of workers.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const int workers = worker_count(jobs, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back(work);
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

struct Prepared {
  std::any value;
  std::optional<Failure> failure;
};

struct MeasurePlan {
  const MeasureDescriptor* descriptor;
  Hyperparams params;
};

std::vector<MeasurePlan> plan_measures(const std::vector<std::string>& ids,
                                       const HarnessOptions& options,
                                       std::optional<std::uint64_t> test_seed) {
  Hyperparams overrides = options.hyperparams;
  overrides["seed"] = static_cast<double>(test_seed.value_or(options.seed));
  std::vector<MeasurePlan> plans;
  std::set<std::string> seen;
  for (const std::string& id : ids) {
    if (!options.registry->contains(id)) {
      throw ConfigError("unknown measure '" + id + "'");
    }
    const MeasureDescriptor& d = options.registry->get(id);
    if (!seen.insert(d.id).second) continue;
    plans.push_back({&d, merged_hyperparams(d, overrides)});
  }
  return plans;
}

// results[m][p] for measure m and pair p.
std::vector<std::vector<MeasureResult>> score_pairs(
    const std::vector<const Matrix*>& mats, const std::vector<PairIndex>& pairs,
    const std::vector<MeasurePlan>& plans, int jobs) {
  const std::size_t n_measures = plans.size();

  // Per-representation work for staged measures.
  std::vector<std::vector<Prepared>> prepared(n_measures);
  std::vector<std::pair<std::size_t, std::size_t>> prepare_items;
  for (std::size_t m = 0; m < n_measures; ++m) {
    if (!plans[m].descriptor->staged) continue;
    prepared[m].resize(mats.size());
    for (std::size_t r = 0; r < mats.size(); ++r) prepare_items.emplace_back(m, r);
  }
  parallel_for(prepare_items.size(), jobs, [&](std::size_t item) {
    const auto [m, r] = prepare_items[item];
    const MeasurePlan& plan = plans[m];
    Prepared& slot = prepared[m][r];
    try {
      slot.value = plan.descriptor->staged->prepare(*mats[r], plan.params);
    } catch (const MeasureError& e) {
      slot.failure = Failure{e.kind(), e.what()};
    } catch (const std::exception& e) {
      slot.failure = Failure{FailureKind::kNumerical, e.what()};
    }
  });

  std::vector<std::vector<MeasureResult>> results(
      n_measures, std::vector<MeasureResult>(
                      pairs.size(), MeasureResult::failure(FailureKind::kNumerical, "unset")));
  parallel_for(n_measures * pairs.size(), jobs, [&](std::size_t item) {
    const std::size_t m = item / pairs.size();
    const std::size_t p = item % pairs.size();
    const MeasurePlan& plan = plans[m];
    const MeasureDescriptor& d = *plan.descriptor;
    const auto [l, r] = pairs[p];
    const Matrix& a = *mats[l];
    const Matrix& b = *mats[r];
    if (!d.allows_different_instances && a.rows() != b.rows()) {
      results[m][p] = MeasureResult::failure(
          FailureKind::kDimensionMismatch,
          "instance counts differ: " + std::to_string(a.rows()) + " vs " +
              std::to_string(b.rows()));
      return;
    }
    if (d.staged) {
      const Prepared& pa = prepared[m][l];
      const Prepared& pb = prepared[m][r];
      if (pa.failure || pb.failure) {
        const Failure& f = pa.failure ? *pa.failure : *pb.failure;
        results[m][p] = MeasureResult::failure(f.kind, f.message);
        return;
      }
      results[m][p] =
          capture([&] { return d.staged->compare(pa.value, pb.value, plan.params); });
      return;
    }
    results[m][p] = capture([&] { return d.fn(a, b, plan.params); });
  });
  return results;
}

CellResult blank_cell(const TestConfig& spec, const MeasureDescriptor& d) {
  CellResult cell;
  cell.test = spec.name;
  cell.kind = spec.kind;
  cell.dataset = spec.dataset;
  cell.architecture = spec.architecture;
  cell.measure = d.id;
  return cell;
}

// Counts failures; returns the failure for a cell with more than half failed.
std::optional<Failure> pair_failure(const std::vector<MeasureResult>& results,
                                    std::size_t& failed) {
  failed = 0;
  const Failure* first = nullptr;
  for (const MeasureResult& r : results) {
    if (r.ok()) continue;
    if (!first) first = &r.error();
    ++failed;
  }
  if (2 * failed <= results.size()) return std::nullopt;
  return Failure{first->kind, std::to_string(failed) + " of " +
                                  std::to_string(results.size()) +
                                  " pairs failed: " + first->message};
}

// Indices of `ids` in lexicographic order; duplicate ids are rejected.
std::vector<std::size_t> canonical_order(const std::vector<std::string>& ids) {
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (ids[order[i]] == ids[order[i - 1]]) {
      throw ConfigError("duplicate model id '" + ids[order[i]] + "'");
    }
  }
  return order;
}

std::vector<PairIndex> all_pairs(std::size_t n) {
  std::vector<PairIndex> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Representation load_rep(const std::filesystem::path& path) {
  try {
    return load_representation(path);
  } catch (const MeasureError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string primary_score(TestKind kind) {
  switch (kind) {
    case TestKind::kAccuracyCorr:
    case TestKind::kOutputCorr: return "spearman";
    case TestKind::kGroup: return "auprc";
    case TestKind::kLayer: return "conformity";
  }
  return "spearman";
}

std::vector<CellResult> run_prediction_test(const TestConfig& spec,
                                            const std::vector<Representation>& reps,
                                            const std::vector<ModelOutputs>& outs,
                                            const std::vector<std::string>& measures,
                                            const HarnessOptions& options) {
  if (reps.size() != outs.size()) {
    throw ConfigError("test '" + spec.name + "': representations and outputs differ in count");
  }
  if (reps.size() < 3) {
    throw ConfigError("test '" + spec.name + "': prediction tests need at least three models");
  }
  std::vector<std::string> ids;
  for (const Representation& r : reps) ids.push_back(r.model_id);
  const std::vector<std::size_t> order = canonical_order(ids);

  std::vector<const Matrix*> mats;
  for (std::size_t i : order) mats.push_back(&reps[i].data);
  const std::vector<PairIndex> pairs = all_pairs(order.size());

  // Output differences, one per pair.
  Vector delta(static_cast<Index>(pairs.size()));
  std::optional<Failure> delta_failure;
  try {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const ModelOutputs& a = outs[order[pairs[p].first]];
      const ModelOutputs& b = outs[order[pairs[p].second]];
      double d = 0.0;
      if (spec.kind == TestKind::kAccuracyCorr) {
        d = accuracy_diff(a, b);
      } else if (spec.output_diff == OutputDiff::kJsd) {
        d = jsd_mean(a, b);
      } else {
        d = disagreement(a, b);
      }
      delta(static_cast<Index>(p)) = d;
    }
  } catch (const MeasureError& e) {
    delta_failure = Failure{e.kind(), e.what()};
  }

  const std::vector<MeasurePlan> plans = plan_measures(measures, options, spec.seed);
  const auto results = score_pairs(mats, pairs, plans, options.jobs);

  std::vector<CellResult> cells;
  for (std::size_t m = 0; m < plans.size(); ++m) {
    const MeasureDescriptor& d = *plans[m].descriptor;
    CellResult cell = blank_cell(spec, d);
    cell.pairs = pairs.size();
    cell.failure = pair_failure(results[m], cell.failed_pairs);
    if (!cell.failure && delta_failure) cell.failure = delta_failure;
    if (!cell.failure) {
      std::vector<double> dist, diff;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const PairScore s = PairScore::make(ids[order[pairs[p].first]],
                                            ids[order[pairs[p].second]],
                                            results[m][p], d.orientation);
        if (!s.oriented) continue;
        dist.push_back(-*s.oriented);
        diff.push_back(delta(static_cast<Index>(p)));
      }
      const MeasureResult rho = capture([&] {
        return spearman(Eigen::Map<Vector>(dist.data(), static_cast<Index>(dist.size())),
                        Eigen::Map<Vector>(diff.data(), static_cast<Index>(diff.size())));
      });
      if (rho.ok()) {
        cell.scores["spearman"] = rho.value();
      } else {
        cell.failure = rho.error();
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::vector<CellResult> run_group_test(const TestConfig& spec,
                                       const std::vector<Representation>& reps,
                                       const std::vector<std::string>& measures,
                                       const HarnessOptions& options) {
  std::vector<std::string> ids;
  std::map<std::string, std::string> group_of;
  std::map<std::string, std::size_t> group_sizes;
  for (const Representation& r : reps) {
    if (!r.group) {
      throw ConfigError("test '" + spec.name + "': representation '" + r.model_id +
                        "' has no group");
    }
    ids.push_back(r.model_id);
    group_of[r.model_id] = *r.group;
    ++group_sizes[*r.group];
  }
  if (group_sizes.size() < 2) {
    throw ConfigError("test '" + spec.name + "': group tests need at least two groups");
  }
  for (const auto& [g, size] : group_sizes) {
    if (size < 2) {
      throw ConfigError("test '" + spec.name + "': group '" + g +
                        "' needs at least two members");
    }
  }
  const std::vector<std::size_t> order = canonical_order(ids);
  std::vector<const Matrix*> mats;
  for (std::size_t i : order) mats.push_back(&reps[i].data);
  const std::vector<PairIndex> pairs = all_pairs(order.size());

  const std::vector<MeasurePlan> plans = plan_measures(measures, options, spec.seed);
  const auto results = score_pairs(mats, pairs, plans, options.jobs);

  std::vector<CellResult> cells;
  for (std::size_t m = 0; m < plans.size(); ++m) {
    const MeasureDescriptor& d = *plans[m].descriptor;
    CellResult cell = blank_cell(spec, d);
    cell.pairs = pairs.size();
    cell.failure = pair_failure(results[m], cell.failed_pairs);
    if (!cell.failure) {
      std::vector<PairScore> scores;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        scores.push_back(PairScore::make(ids[order[pairs[p].first]],
                                         ids[order[pairs[p].second]], results[m][p],
                                         d.orientation));
      }
      try {
        const GroupConformity g = conformity_groups(scores, group_of);
        cell.scores["auprc"] = g.auprc;
        cell.scores["conformity"] = g.conformity_rate;
      } catch (const MeasureError& e) {
        cell.failure = Failure{e.kind(), e.what()};
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::vector<CellResult> run_layer_test(const TestConfig& spec,
                                       const std::vector<std::vector<Representation>>& models,
                                       const std::vector<std::string>& measures,
                                       const HarnessOptions& options) {
  if (models.empty()) throw ConfigError("test '" + spec.name + "': no models");
  std::vector<const Matrix*> mats;
  std::vector<PairIndex> pairs;
  // Per model: offset into `pairs` and layer count.
  std::vector<std::pair<std::size_t, int>> spans;
  for (const auto& layers : models) {
    if (layers.size() < 3) {
      throw ConfigError("test '" + spec.name + "': every model needs at least three layers");
    }
    const std::size_t base = mats.size();
    spans.emplace_back(pairs.size(), static_cast<int>(layers.size()));
    for (const Representation& r : layers) mats.push_back(&r.data);
    for (const auto& [i, j] : all_pairs(layers.size())) pairs.emplace_back(base + i, base + j);
  }

  const std::vector<MeasurePlan> plans = plan_measures(measures, options, spec.seed);
  const auto results = score_pairs(mats, pairs, plans, options.jobs);

  std::vector<CellResult> cells;
  for (std::size_t m = 0; m < plans.size(); ++m) {
    const MeasureDescriptor& d = *plans[m].descriptor;
    CellResult cell = blank_cell(spec, d);
    cell.pairs = pairs.size();
    double conformity = 0.0, rho = 0.0;
    std::size_t included = 0;
    std::optional<Failure> first;
    for (const auto& [offset, layers] : spans) {
      std::map<std::pair<int, int>, double> table;
      std::optional<Failure> model_failure;
      std::size_t p = offset;
      for (int i = 1; i <= layers; ++i) {
        for (int j = i + 1; j <= layers; ++j, ++p) {
          const MeasureResult& r = results[m][p];
          if (!r.ok()) {
            ++cell.failed_pairs;
            if (!model_failure) model_failure = r.error();
            continue;
          }
          table[{i, j}] = d.orientation == Orientation::kSimilarity ? r.value() : -r.value();
        }
      }
      if (!model_failure) {
        try {
          const LayerConformity c = conformity_layers(table, layers);
          conformity += c.conformity_rate;
          rho += c.spearman_vs_distance;
          ++included;
        } catch (const MeasureError& e) {
          model_failure = Failure{e.kind(), e.what()};
        }
      }
      if (model_failure && !first) first = model_failure;
    }
    const std::size_t excluded = spans.size() - included;
    if (2 * excluded > spans.size() || included == 0) {
      cell.failure = Failure{first->kind, std::to_string(excluded) + " of " +
                                              std::to_string(spans.size()) +
                                              " models failed: " + first->message};
    } else {
      cell.scores["conformity"] = conformity / static_cast<double>(included);
      cell.scores["spearman"] = rho / static_cast<double>(included);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

RankSummary aggregate_ranks(const std::vector<CellResult>& cells) {
  RankSummary summary;
  using GroupKey = std::tuple<std::string, std::string, std::string>;
  std::map<GroupKey, std::size_t> group_index;
  std::vector<std::vector<const CellResult*>> members;
  for (const CellResult& c : cells) {
    const GroupKey key{c.test, c.dataset, c.architecture};
    auto [it, inserted] = group_index.try_emplace(key, summary.groups.size());
    if (inserted) {
      summary.groups.push_back({c.test, c.dataset, c.architecture, {}});
      members.emplace_back();
    }
    members[it->second].push_back(&c);
  }

  std::map<std::string, std::size_t> aggregate_index;
  for (std::size_t g = 0; g < summary.groups.size(); ++g) {
    const auto& group = members[g];
    const double worst = static_cast<double>(group.size());
    std::vector<std::size_t> scored;
    std::vector<double> negated;
    for (std::size_t i = 0; i < group.size(); ++i) {
      const CellResult& c = *group[i];
      auto it = c.scores.find(primary_score(c.kind));
      if (c.ok() && it != c.scores.end()) {
        scored.push_back(i);
        negated.push_back(-it->second);
      }
    }
    std::vector<RankEntry> entries(group.size());
    for (std::size_t i = 0; i < group.size(); ++i) {
      entries[i] = {group[i]->measure, worst, true};
    }
    if (!scored.empty()) {
      const Vector ranks = average_ranks(
          Eigen::Map<Vector>(negated.data(), static_cast<Index>(negated.size())));
      for (std::size_t s = 0; s < scored.size(); ++s) {
        entries[scored[s]].rank = ranks(static_cast<Index>(s));
        entries[scored[s]].flagged = false;
      }
    }
    for (const RankEntry& e : entries) {
      auto [it, inserted] = aggregate_index.try_emplace(e.measure, summary.aggregates.size());
      if (inserted) summary.aggregates.push_back({e.measure, {}, 0.0, 0});
      MeasureAggregate& agg = summary.aggregates[it->second];
      agg.ranks.push_back(e.rank);
      if (e.flagged) ++agg.failed_cells;
    }
    summary.groups[g].entries = std::move(entries);
  }
  for (MeasureAggregate& agg : summary.aggregates) agg.median_rank = median(agg.ranks);
  std::stable_sort(summary.aggregates.begin(), summary.aggregates.end(),
                   [](const MeasureAggregate& a, const MeasureAggregate& b) {
                     if (a.median_rank != b.median_rank) return a.median_rank < b.median_rank;
                     return a.measure < b.measure;
                   });
  return summary;
}

BenchmarkReport run_benchmark(const RunConfig& config, HarnessOptions options) {
  Hyperparams merged = config.hyperparams;
  for (const auto& [key, value] : options.hyperparams) merged[key] = value;
  options.hyperparams = std::move(merged);
  options.seed = config.seed;

  BenchmarkReport report;
  for (const TestConfig& test : config.tests) {
    std::vector<std::string> measures =
        !test.measures.empty() ? test.measures
        : !config.measures.empty() ? config.measures
                                   : options.registry->ids();
    std::vector<CellResult> cells;
    switch (test.kind) {
      case TestKind::kGroup: {
        std::vector<Representation> reps;
        std::map<std::string, int> stem_count;
        for (std::size_t g = 0; g < test.groups.size(); ++g) {
          const std::string name =
              g < test.group_names.size() ? test.group_names[g] : "group" + std::to_string(g);
          for (const auto& path : test.groups[g]) {
            Representation r = load_rep(path);
            r.group = name;
            ++stem_count[r.model_id];
            reps.push_back(std::move(r));
          }
        }
        // Qualify ids that repeat across groups.
        for (Representation& r : reps) {
          if (stem_count[r.model_id] > 1) r.model_id = *r.group + "/" + r.model_id;
        }
        cells = run_group_test(test, reps, measures, options);
        break;
      }
      case TestKind::kAccuracyCorr:
      case TestKind::kOutputCorr: {
        const std::vector<int> labels = read_labels(test.labels);
        std::vector<Representation> reps;
        std::vector<ModelOutputs> outs;
        for (std::size_t i = 0; i < test.representations.size(); ++i) {
          reps.push_back(load_rep(test.representations[i]));
          try {
            outs.push_back(ModelOutputs::make(read_matrix(test.outputs[i]), labels));
          } catch (const MeasureError& e) {
            throw FormatError(test.outputs[i].string() + ": " + e.what());
          }
        }
        cells = run_prediction_test(test, reps, outs, measures, options);
        break;
      }
      case TestKind::kLayer: {
        std::vector<std::vector<Representation>> models;
        for (const auto& paths : test.layer_order) {
          std::vector<Representation> layers;
          for (std::size_t l = 0; l < paths.size(); ++l) {
            Representation r = load_rep(paths[l]);
            r.layer = static_cast<int>(l) + 1;
            layers.push_back(std::move(r));
          }
          models.push_back(std::move(layers));
        }
        cells = run_layer_test(test, models, measures, options);
        break;
      }
    }
    for (CellResult& c : cells) report.cells.push_back(std::move(c));
  }
  report.ranks = aggregate_ranks(report.cells);
  return report;
}

}  // namespace resim
