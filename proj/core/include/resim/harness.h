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

#ifndef RESIM_HARNESS_H_
#define RESIM_HARNESS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resim/config.h"
#include "resim/registry.h"
#include "resim/types.h"

namespace resim {

// One (test, dataset, architecture, measure) result.
struct CellResult {
  std::string test;
  TestKind kind = TestKind::kGroup;
  std::string dataset;
  std::string architecture;
  std::string measure;
  // "spearman" for prediction tests, "auprc" and "conformity" for group
  // tests, "conformity" and "spearman" for layer tests.
  std::map<std::string, double> scores;
  std::optional<Failure> failure;
  std::size_t pairs = 0;
  std::size_t failed_pairs = 0;

  bool ok() const { return !failure.has_value(); }
};

// The score used to rank measures within a cell group.
std::string primary_score(TestKind kind);

struct RankEntry {
  std::string measure;
  double rank = 0.0;
  bool flagged = false;  // the cell failed and was given the worst rank
};

struct RankGroup {
  std::string test;
  std::string dataset;
  std::string architecture;
  std::vector<RankEntry> entries;  // in cell order
};

struct MeasureAggregate {
  std::string measure;
  std::vector<double> ranks;  // one per rank group, in group order
  double median_rank = 0.0;
  std::size_t failed_cells = 0;
};

struct RankSummary {
  std::vector<RankGroup> groups;
  // Sorted by median rank, then measure id.
  std::vector<MeasureAggregate> aggregates;
};

// Ranks measures within every (test, dataset, architecture) group by their
// primary score, descending, with average ranks for ties. A failed cell gets
// rank = number of measures in its group and is flagged.
RankSummary aggregate_ranks(const std::vector<CellResult>& cells);

struct BenchmarkReport {
  std::vector<CellResult> cells;
  RankSummary ranks;
};

struct HarnessOptions {
  // Worker threads; 0 means all hardware threads.
  int jobs = 0;
  // Run-level hyperparameter overrides, e.g. k.
  Hyperparams hyperparams;
  // Default seed for seeded measures when the test has none.
  std::uint64_t seed = 0;
  const MeasureRegistry* registry = &MeasureRegistry::builtin();
};

// Every representation pair is scored with every measure; a measure whose
// pairs fail more than half of the time yields a failed cell.
//
// Prediction tests: `reps[i]` and `outs[i]` belong to model i. The cell score
// is spearman(oriented distance, output difference) over all model pairs.
std::vector<CellResult> run_prediction_test(const TestConfig& spec,
                                            const std::vector<Representation>& reps,
                                            const std::vector<ModelOutputs>& outs,
                                            const std::vector<std::string>& measures,
                                            const HarnessOptions& options = {});

// Group tests: every representation must carry a group tag.
std::vector<CellResult> run_group_test(const TestConfig& spec,
                                       const std::vector<Representation>& reps,
                                       const std::vector<std::string>& measures,
                                       const HarnessOptions& options = {});

// Layer tests: one layer-ordered list per model. Scores are averaged over
// models; a model with any failed layer pair is left out, and the cell fails
// when more than half of the models are left out.
std::vector<CellResult> run_layer_test(const TestConfig& spec,
                                       const std::vector<std::vector<Representation>>& models,
                                       const std::vector<std::string>& measures,
                                       const HarnessOptions& options = {});

// Loads every test's inputs and runs it. Measures default to the run list,
// then to every registered measure. Throws ConfigError or FormatError for
// bad inputs.
BenchmarkReport run_benchmark(const RunConfig& config, HarnessOptions options = {});

}  // namespace resim

#endif  // RESIM_HARNESS_H_
