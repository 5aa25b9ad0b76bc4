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

// resim: score representation pairs, run benchmark configs, render reports
// and generate synthetic suites.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "resim/config.h"
#include "resim/harness.h"
#include "resim/io.h"
#include "resim/registry.h"
#include "resim/report.h"
#include "resim/suites.h"

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kConfigError = 2;
constexpr int kFailedCell = 3;

int run_measure(const std::string& left, const std::string& right,
                const std::string& measure, std::optional<int> k,
                std::optional<std::uint64_t> seed) {
  const resim::MeasureRegistry& registry = resim::MeasureRegistry::builtin();
  if (!registry.contains(measure)) {
    std::cerr << "error: unknown measure '" << measure << "'\n";
    return kConfigError;
  }
  resim::Hyperparams overrides;
  if (k) overrides["k"] = *k;
  if (seed) overrides["seed"] = static_cast<double>(*seed);
  const resim::Matrix a = resim::read_matrix(left);
  const resim::Matrix b = resim::read_matrix(right);
  const resim::MeasureResult r = registry.evaluate(measure, a, b, overrides);
  if (!r.ok()) {
    std::cerr << "failed:" << resim::to_string(r.error().kind) << ": "
              << r.error().message << "\n";
    return kError;
  }
  std::printf("%.12g\n", r.value());
  return kOk;
}

int run_bench(const std::string& config_path, int jobs, bool strict,
              const std::string& out) {
  resim::RunConfig config;
  try {
    config = resim::load_run_config(config_path);
  } catch (const resim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  if (!out.empty()) config.out_dir = out;

  resim::HarnessOptions options;
  options.jobs = jobs;
  resim::BenchmarkReport report;
  try {
    report = resim::run_benchmark(config, options);
  } catch (const resim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  resim::write_report(report, config.out_dir);
  std::cout << resim::report_table(report);

  std::size_t failed = 0;
  for (const resim::CellResult& c : report.cells) failed += c.ok() ? 0 : 1;
  std::cerr << report.cells.size() << " cells (" << failed << " failed) written to "
            << config.out_dir.string() << "\n";
  return strict && failed > 0 ? kFailedCell : kOk;
}

int run_report(const std::string& input, const std::string& format) {
  const resim::BenchmarkReport report = resim::read_report(input);
  std::cout << (format == "csv" ? resim::report_csv(report) : resim::report_table(report));
  return kOk;
}

int run_synth(const std::string& suite, std::uint64_t seed, const std::string& out) {
  resim::write_suite(resim::parse_suite(suite), seed, out);
  std::cerr << "wrote " << suite << " suite to " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representational similarity measures and benchmark harness"};
  app.require_subcommand(1);

  auto* measure = app.add_subcommand("measure", "Score one pair of representations");
  std::string left, right, measure_id;
  std::optional<int> k;
  std::optional<std::uint64_t> measure_seed;
  measure->add_option("--left", left, "Left representation (.npy or .csv)")->required();
  measure->add_option("--right", right, "Right representation (.npy or .csv)")->required();
  measure->add_option("--measure", measure_id, "Measure id, e.g. cka")->required();
  measure->add_option("--k", k, "Neighborhood size for neighbor measures");
  measure->add_option("--seed", measure_seed, "Seed for randomized measures");

  auto* bench = app.add_subcommand("bench", "Run a benchmark config");
  std::string config_path, out_dir;
  int jobs = 0;
  bool strict = false;
  bench->add_option("--config", config_path, "Run config (TOML)")->required();
  bench->add_option("--jobs", jobs, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  bench->add_flag("--strict", strict, "Exit with code 3 if any cell failed");
  bench->add_option("--out", out_dir, "Override the configured output directory");

  auto* report = app.add_subcommand("report", "Render a results.json file");
  std::string input, format = "table";
  report->add_option("--input", input, "results.json")->required();
  report->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "table"}));

  auto* synth = app.add_subcommand("synth", "Write a synthetic benchmark suite");
  std::string suite, synth_out;
  std::uint64_t seed = 0;
  synth->add_option("--suite", suite, "Suite to generate")
      ->required()
      ->check(CLI::IsMember({"groups", "layers", "prediction", "all"}));
  synth->add_option("--seed", seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*measure) return run_measure(left, right, measure_id, k, measure_seed);
    if (*bench) return run_bench(config_path, jobs, strict, out_dir);
    if (*report) return run_report(input, format);
    if (*synth) return run_synth(suite, seed, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
