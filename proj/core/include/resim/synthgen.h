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

#ifndef RESIM_SYNTHGEN_H_
#define RESIM_SYNTHGEN_H_

#include <cstdint>
#include <vector>

#include "resim/types.h"

// Seeded generators of representation families with known ground truth.
// Every function is a pure function of its arguments.

namespace resim {

enum class GroupMap { kOrthogonal, kRandomLinear };

struct GroupedConfig {
  std::uint64_t seed = 0;
  int groups = 3;
  int members = 5;
  Index instances = 200;
  Index features = 16;
  double within_noise = 0.01;
  GroupMap between_map = GroupMap::kRandomLinear;
};

// Shared Gaussian base B; group g uses B * M_g, each member adds
// within_noise * E. Model ids are "g<group>_m<member>", group tags "g<group>".
std::vector<Representation> gen_grouped(const GroupedConfig& config);

struct RotationChainConfig {
  std::uint64_t seed = 0;
  int layers = 5;
  Index instances = 100;
  Index features = 8;
  double angle = 0.2;  // radians per layer
};

// Layer l is cos(l*angle) X + sin(l*angle) Z where X, Z are centered,
// unit-Frobenius, have equal Gram matrices and mutually orthogonal column
// spaces. Successive layers therefore rotate by `angle` in instance space and
// the angular shape distance between layers i and j is |i - j| * angle.
// Needs layers * angle <= pi/2 and instances > 2 * features.
std::vector<Representation> gen_rotation_chain(const RotationChainConfig& config);

struct OutputsConfig {
  std::uint64_t seed = 0;
  Index instances = 200;
  Index features = 16;
  Index classes = 5;
  double logit_scale = 3.0;
  std::vector<double> divergence;  // one entry per model
};

struct OutputFamily {
  std::vector<Representation> representations;
  std::vector<ModelOutputs> outputs;
  std::vector<int> labels;
};

// Base logits Z; model m outputs softmax(Z + d_m E_m) and representation
// B + d_m F_m. Labels are the argmax of softmax(Z).
OutputFamily gen_outputs(const OutputsConfig& config);

// Evenly spaced divergence grid d_m = step * (m + 1).
std::vector<double> divergence_grid(int models, double step);

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed);
Matrix random_orthogonal(Index n, std::uint64_t seed);

}  // namespace resim

#endif  // RESIM_SYNTHGEN_H_
