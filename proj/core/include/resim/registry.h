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

#ifndef RESIM_REGISTRY_H_
#define RESIM_REGISTRY_H_

#include <any>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resim/evalkit.h"
#include "resim/types.h"

namespace resim {

enum class Family { kAlignment, kRsm, kCca, kNeighbors, kStatistic, kTopology };

enum class Preprocessing {
  kCenterColumns,
  kUnitFrobenius,
  kSqrtNFrobenius,
};

std::string_view to_string(Family family);
std::string_view to_string(Orientation orientation);
std::string_view to_string(Preprocessing step);

using Hyperparams = std::map<std::string, double>;

// Computes the raw score; throws MeasureError on failure.
using MeasureFn =
    std::function<double(const Matrix&, const Matrix&, const Hyperparams&)>;

// Optional two-stage form for measures whose per-representation work can be
// shared across pairs: `prepare` runs once per representation, `compare` once
// per pair. `fn` must equal compare(prepare(a), prepare(b)).
struct Staged {
  std::function<std::any(const Matrix&, const Hyperparams&)> prepare;
  std::function<double(const std::any&, const std::any&, const Hyperparams&)> compare;
};

struct MeasureDescriptor {
  std::string id;            // registry key, lowercase
  std::string display_name;  // abbreviation used in tables
  std::string full_name;
  Family family;
  Orientation orientation;
  // Applied inside the measure; listed for reporting.
  std::vector<Preprocessing> preprocessing;
  Hyperparams hyperparams;
  // Whether N may differ between the two inputs.
  bool allows_different_instances = false;
  MeasureFn fn;
  std::optional<Staged> staged;
};

class MeasureRegistry {
 public:
  // The 23 built-in measures.
  static const MeasureRegistry& builtin();

  // Inserts or replaces by id.
  void add(MeasureDescriptor descriptor);

  // Case-insensitive lookup; throws std::out_of_range for unknown ids.
  const MeasureDescriptor& get(std::string_view id) const;
  bool contains(std::string_view id) const;

  // Ids in registry (alphabetical) order.
  std::vector<std::string> ids() const;
  std::size_t size() const { return measures_.size(); }

  // Runs the measure with `overrides` layered over its default
  // hyperparameters. Never throws MeasureError; failures become results.
  MeasureResult evaluate(std::string_view id, const Matrix& a, const Matrix& b,
                         const Hyperparams& overrides = {}) const;

 private:
  std::map<std::string, MeasureDescriptor> measures_;
};

// Layers overrides on defaults, ignoring keys the measure does not declare.
Hyperparams merged_hyperparams(const MeasureDescriptor& d,
                               const Hyperparams& overrides);

// Wraps a throwing computation into a MeasureResult.
MeasureResult capture(const std::function<double()>& compute);

}  // namespace resim

#endif  // RESIM_REGISTRY_H_
