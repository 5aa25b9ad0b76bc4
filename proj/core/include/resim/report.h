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

#ifndef RESIM_REPORT_H_
#define RESIM_REPORT_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "resim/harness.h"

namespace resim {

// "ok" or "failed:<kind>", e.g. "failed:numerical".
std::string cell_status(const CellResult& cell);

// Full report: cells, rank groups and per-measure aggregates. Key order and
// number formatting are fixed, so equal reports serialize to equal bytes.
nlohmann::json report_to_json(const BenchmarkReport& report);
std::string report_json_text(const BenchmarkReport& report);

// Inverse of report_to_json; throws FormatError on malformed documents.
BenchmarkReport report_from_json(const nlohmann::json& doc);
BenchmarkReport read_report(const std::filesystem::path& path);

// One row per cell: test, kind, dataset, architecture, measure, status,
// spearman, auprc, conformity, rank.
std::string report_csv(const BenchmarkReport& report);

// Measures as rows (by median rank), cell groups as columns holding the
// primary score; failed cells print as "n/a".
std::string report_table(const BenchmarkReport& report);

// Writes results.json, results.csv and results_table.txt into `out_dir`,
// creating it if needed. Throws FormatError if a file cannot be written.
void write_report(const BenchmarkReport& report, const std::filesystem::path& out_dir);

}  // namespace resim

#endif  // RESIM_REPORT_H_
