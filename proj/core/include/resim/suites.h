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

#ifndef RESIM_SUITES_H_
#define RESIM_SUITES_H_

#include <cstdint>
#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

// Ready-to-run synthetic benchmark inputs on disk.

namespace resim {

enum class Suite { kGroups, kLayers, kPrediction, kAll };

// "groups", "layers", "prediction" or "all"; throws std::invalid_argument.
Suite parse_suite(std::string_view name);

// Generates the suite from `seed` and writes one NPY file per matrix, a
// manifest.json (ids, groups, layer order, seeds) and a run.toml that
// benchmarks the files. kAll writes the three suites into subdirectories
// under a single run.toml. Returns the manifest.
nlohmann::json write_suite(Suite suite, std::uint64_t seed,
                           const std::filesystem::path& out_dir);

}  // namespace resim

#endif  // RESIM_SUITES_H_
