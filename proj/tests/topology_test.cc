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

#include "resim/topology.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.h"
#include "oracles.h"

namespace resim {
namespace {

using fixtures::gaussian;

std::vector<std::vector<int>> as_int(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (const auto& adj : g.adjacency) out.emplace_back(adj.begin(), adj.end());
  return out;
}

// Largest relative error of the estimated traces over the grid.
double worst_relative_error(const Graph& g, std::uint64_t seed) {
  const HeatTraceDescriptor d = heat_trace(g, HeatTraceParams{}, seed);
  const Vector spectrum = oracle::laplacian_spectrum(as_int(g));
  double worst = 0;
  for (std::size_t i = 0; i < d.t_grid.size(); ++i) {
    const double exact = oracle::heat_trace(spectrum, d.t_grid[i]);
    worst = std::max(worst, std::abs(d.traces[i] - exact) / exact);
  }
  return worst;
}

TEST(TimeGrid, LogSpaced) {
  const auto& t = default_time_grid();
  ASSERT_EQ(t.size(), 256u);
  EXPECT_NEAR(t.front(), 1e-2, 1e-15);
  EXPECT_NEAR(t.back(), 1e2, 1e-10);
  EXPECT_NEAR(t[1] / t[0], t[200] / t[199], 1e-12);
}

TEST(Graphs, KnnGraphIsSymmetric) {
  const Graph g = knn_graph(gaussian(20, 3, 1), 3);
  for (Index i = 0; i < g.size(); ++i) {
    EXPECT_GE(g.adjacency[i].size(), 3u);
    for (Index j : g.adjacency[i]) {
      const auto& back = g.adjacency[j];
      EXPECT_NE(std::find(back.begin(), back.end(), i), back.end());
    }
  }
  EXPECT_THROW(knn_graph(gaussian(5, 2, 2), 0), MeasureError);
  EXPECT_THROW(knn_graph(gaussian(5, 2, 2), 5), MeasureError);
}

TEST(Graphs, NormalizedLaplacianOfTriangle) {
  const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(normalized_laplacian(k3));
  EXPECT_NEAR(eig.eigenvalues()(0), 0, 1e-12);
  EXPECT_NEAR(eig.eigenvalues()(1), 1.5, 1e-12);
  EXPECT_NEAR(eig.eigenvalues()(2), 1.5, 1e-12);
}

TEST(HeatTrace, TriangleAtUnitTime) {
  const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<double> grid = {1.0};
  const HeatTraceDescriptor d = heat_trace(k3, HeatTraceParams{}, 0, grid);
  EXPECT_NEAR(d.traces[0], 1 + 2 * std::exp(-1.5), 0.05 * (1 + 2 * std::exp(-1.5)));
}

TEST(HeatTrace, SmallGraphsMatchDenseSpectrum) {
  const std::vector<Graph> graphs = {
      Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}),
      Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}),
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}),
      Graph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}}),
      Graph::from_edges(8, {{0, 1}, {2, 3}}),
      knn_graph(gaussian(8, 2, 3), 2),
  };
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    EXPECT_LT(worst_relative_error(graphs[i], i), 0.05) << "graph " << i;
  }
}

TEST(HeatTrace, SmallTimeApproachesVertexCount) {
  const HeatTraceDescriptor d = heat_trace(gaussian(60, 4, 4), HeatTraceParams{}, 1);
  EXPECT_NEAR(d.traces.front(), 60, 0.02 * 60);
  for (std::size_t i = 1; i < d.traces.size(); ++i) {
    EXPECT_LE(d.traces[i], d.traces[i - 1] + 1e-9);
  }
}

TEST(HeatTrace, DeterministicForSeed) {
  const Matrix m = gaussian(40, 3, 5);
  HeatTraceParams p;
  p.probes = 50;
  const HeatTraceDescriptor a = heat_trace(m, p, 9), b = heat_trace(m, p, 9);
  EXPECT_EQ(a.traces, b.traces);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_EQ(a.params, p);
}

TEST(Imd, Examples) {
  const Matrix r = gaussian(50, 4, 6);
  HeatTraceParams p;
  p.probes = 100;
  EXPECT_EQ(imd(r, r, p, 3), 0.0);
  EXPECT_NEAR(imd(r, r * random_orthogonal(4, 7), p, 3), 0, 1e-6);
  const Matrix other = gaussian(70, 4, 8);
  EXPECT_EQ(imd(r, other, p, 3), imd(other, r, p, 3));
  EXPECT_GT(imd(r, other, p, 3), 0);
  EXPECT_THROW(imd(r.topRows(4), r.topRows(4), p, 0), MeasureError);
}

TEST(Imd, RowPermutationInvariantUnderFixedSeed) {
  const Matrix a = gaussian(60, 5, 9), b = gaussian(60, 3, 10);
  const auto perm = fixtures::permutation(60, 11);
  HeatTraceParams p;
  p.probes = 100;
  EXPECT_NEAR(imd(a, b, p, 4),
              imd(fixtures::permute_rows(a, perm), fixtures::permute_rows(b, perm), p, 4),
              1e-8);
}

}  // namespace
}  // namespace resim
