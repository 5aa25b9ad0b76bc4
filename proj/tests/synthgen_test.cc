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

#include "resim/synthgen.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "resim/alignment.h"
#include "resim/evalkit.h"
#include "resim/rsm.h"

namespace resim {
namespace {

TEST(Helpers, RandomOrthogonalAndGrid) {
  const Matrix q = random_orthogonal(6, 1);
  EXPECT_TRUE((q.transpose() * q).isIdentity(1e-12));
  EXPECT_EQ(random_orthogonal(6, 1), q);
  EXPECT_EQ(divergence_grid(3, 0.5), (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_EQ(gaussian_matrix(3, 2, 4).topRows(2), gaussian_matrix(2, 2, 4).leftCols(2));
}

TEST(Grouped, LayoutAndDeterminism) {
  GroupedConfig c;
  c.seed = 5;
  const auto a = gen_grouped(c), b = gen_grouped(c);
  ASSERT_EQ(a.size(), 15u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].data, b[i].data);
  EXPECT_EQ(a[0].model_id, "g0_m0");
  EXPECT_EQ(a[7].model_id, "g1_m2");
  EXPECT_EQ(*a[7].group, "g1");
  EXPECT_EQ(a[0].instances(), 200);
  EXPECT_EQ(a[0].features(), 16);
  c.seed = 6;
  EXPECT_NE(gen_grouped(c)[0].data, a[0].data);
}

TEST(Grouped, NoiselessMembersAreIdentical) {
  GroupedConfig c;
  c.within_noise = 0.0;
  c.instances = 40;
  const auto reps = gen_grouped(c);
  EXPECT_EQ(reps[0].data, reps[4].data);
  EXPECT_NE(reps[0].data, reps[5].data);
}

TEST(Grouped, OrthogonalMapsFoolCka) {
  GroupedConfig c;
  c.within_noise = 0.0;
  c.between_map = GroupMap::kOrthogonal;
  c.instances = 50;
  const auto reps = gen_grouped(c);
  EXPECT_NEAR(cka_linear(reps[0].data, reps[1].data), 1, 1e-12);
  EXPECT_NEAR(cka_linear(reps[0].data, reps[5].data), 1, 1e-12);
}

TEST(Grouped, Preconditions) {
  GroupedConfig c;
  c.instances = 12;
  EXPECT_THROW(gen_grouped(c), MeasureError);
  c.instances = 20;
  c.features = 1;
  EXPECT_THROW(gen_grouped(c), MeasureError);
  c.features = 4;
  c.within_noise = -1;
  EXPECT_THROW(gen_grouped(c), MeasureError);
}

TEST(RotationChain, ClosedFormDistances) {
  RotationChainConfig c;
  c.seed = 3;
  const auto chain = gen_rotation_chain(c);
  ASSERT_EQ(chain.size(), 5u);
  EXPECT_EQ(chain[0].layer, 1);
  EXPECT_EQ(chain[4].model_id, "chain_l5");
  EXPECT_NEAR(angular_shape(chain[0].data, chain[4].data), 0.8, 1e-8);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      EXPECT_NEAR(angular_shape(chain[i].data, chain[j].data), 0.2 * (j - i), 1e-8);
    }
  }
}

TEST(RotationChain, ZeroAngleAndPreconditions) {
  RotationChainConfig c;
  c.angle = 0.0;
  const auto chain = gen_rotation_chain(c);
  EXPECT_NEAR(angular_shape(chain[0].data, chain[4].data), 0, 1e-7);
  c.angle = 0.5;
  EXPECT_THROW(gen_rotation_chain(c), MeasureError);
  c.angle = 0.2;
  c.instances = 16;
  EXPECT_THROW(gen_rotation_chain(c), MeasureError);
  c.instances = 100;
  c.features = 1;
  EXPECT_THROW(gen_rotation_chain(c), MeasureError);
}

TEST(Outputs, LayoutAndDeterminism) {
  OutputsConfig c;
  c.seed = 2;
  c.divergence = divergence_grid(4, 0.2);
  const OutputFamily a = gen_outputs(c), b = gen_outputs(c);
  ASSERT_EQ(a.outputs.size(), 4u);
  ASSERT_EQ(a.representations.size(), 4u);
  EXPECT_EQ(a.representations[3].model_id, "model003");
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(a.outputs[m].probs, b.outputs[m].probs);
    EXPECT_EQ(a.representations[m].data, b.representations[m].data);
  }
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.outputs[0].probs.rows(), 200);
  EXPECT_EQ(a.outputs[0].probs.cols(), 5);
}

TEST(Outputs, ZeroDivergenceMeansIdenticalPredictions) {
  OutputsConfig c;
  c.divergence = {0.0, 0.0, 0.0};
  const OutputFamily f = gen_outputs(c);
  EXPECT_EQ(disagreement(f.outputs[0], f.outputs[2]), 0.0);
  EXPECT_EQ(accuracy(f.outputs[0]), 1.0);
  EXPECT_EQ(predictions(f.outputs[1]), f.labels);
}

TEST(Outputs, DivergenceGrowsWithDelta) {
  OutputsConfig c;
  c.divergence = {0.1, 2.0};
  const OutputFamily f = gen_outputs(c);
  EXPECT_GT(1 - accuracy(f.outputs[1]), 1 - accuracy(f.outputs[0]));
  c.divergence = {-1.0};
  EXPECT_THROW(gen_outputs(c), MeasureError);
}

}  // namespace
}  // namespace resim
