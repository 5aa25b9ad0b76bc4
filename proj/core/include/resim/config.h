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

#ifndef RESIM_CONFIG_H_
#define RESIM_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "resim/registry.h"

namespace resim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the TOML subset used by run configs: comments, [table], [a.b],
// [[array.of.tables]], bare/quoted keys, basic and literal strings,
// integers, floats, booleans and (nested, multi-line) arrays. Inline tables,
// dates and multi-line strings are rejected. Throws ConfigError with a line
// number on malformed input.
nlohmann::json parse_toml(std::string_view text);

enum class TestKind { kAccuracyCorr, kOutputCorr, kGroup, kLayer };
enum class OutputDiff { kJsd, kDisagreement };

std::string_view to_string(TestKind kind);
std::string_view to_string(OutputDiff diff);
TestKind parse_test_kind(std::string_view text);

struct TestConfig {
  TestKind kind = TestKind::kGroup;
  std::string name;
  std::string dataset = "synthetic";
  std::string architecture = "synthetic";
  OutputDiff output_diff = OutputDiff::kJsd;
  // Measure ids; empty means the run-level list.
  std::vector<std::string> measures;
  std::optional<std::uint64_t> seed;

  // group tests
  std::vector<std::vector<std::filesystem::path>> groups;
  std::vector<std::string> group_names;
  // prediction tests
  std::vector<std::filesystem::path> representations;
  std::vector<std::filesystem::path> outputs;
  std::filesystem::path labels;
  // layer tests: one layer-ordered list per model
  std::vector<std::vector<std::filesystem::path>> layer_order;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "resim-out";
  std::vector<std::string> measures;  // empty means every registered measure
  Hyperparams hyperparams;            // run-level overrides, e.g. k
  std::vector<TestConfig> tests;
};

// Relative paths are resolved against `base_dir`. Validates kinds, measure
// ids (against `registry`) and per-kind completeness.
RunConfig parse_run_config(std::string_view toml_text,
                           const std::filesystem::path& base_dir,
                           const MeasureRegistry& registry = MeasureRegistry::builtin());
RunConfig load_run_config(const std::filesystem::path& path,
                          const MeasureRegistry& registry = MeasureRegistry::builtin());

}  // namespace resim

#endif  // RESIM_CONFIG_H_
