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

#ifndef RESIM_TOPOLOGY_H_
#define RESIM_TOPOLOGY_H_

#include <cstdint>
#include <vector>

#include "resim/types.h"

// Multi-scale intrinsic distance (IMD) between the k-NN graphs of two
// representations, via stochastic Lanczos quadrature estimates of the heat
// kernel trace tr(exp(-tL)) of the normalized graph Laplacian.

namespace resim {

struct HeatTraceParams {
  int graph_k = 5;
  int lanczos_steps = 10;
  int probes = 800;  // per repeat; probes * lanczos_steps = 8000 matvecs
  int repeats = 5;

  bool operator==(const HeatTraceParams&) const = default;
};

// 256 points log-spaced over [1e-2, 1e2].
const std::vector<double>& default_time_grid();

// Undirected, unweighted graph with sorted adjacency lists.
struct Graph {
  std::vector<std::vector<Index>> adjacency;

  Index size() const { return static_cast<Index>(adjacency.size()); }
  // Builds a graph from an edge list; duplicate edges are merged.
  static Graph from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges);
};

// Symmetrized Euclidean k-NN graph; ties go to the lower row index.
Graph knn_graph(const Matrix& m, int k);

// Dense I - D^{-1/2} A D^{-1/2}; isolated vertices get a zero row.
Matrix normalized_laplacian(const Graph& g);

struct HeatTraceDescriptor {
  std::vector<double> t_grid;
  std::vector<double> traces;
  std::uint64_t seed = 0;
  HeatTraceParams params;
};

// Probe signs are keyed by a relabeling-invariant vertex signature (color
// refinement of the graph), so isomorphic graphs with the same seed get the
// same estimate. The Laplacian null space is deflated exactly: each connected
// component contributes exp(0) = 1 and only the remainder is sampled.
HeatTraceDescriptor heat_trace(const Graph& g, const HeatTraceParams& params,
                               std::uint64_t seed,
                               const std::vector<double>& t_grid = default_time_grid());

// Throws kUndefinedInput unless 0 < graph_k < N.
HeatTraceDescriptor heat_trace(const Matrix& m, const HeatTraceParams& params,
                               std::uint64_t seed,
                               const std::vector<double>& t_grid = default_time_grid());

// sup_t exp(-2(t + 1/t)) |h_a(t) - h_b(t)|. Descriptors must share the grid.
double imd_distance(const HeatTraceDescriptor& a, const HeatTraceDescriptor& b);

// Instance counts may differ.
double imd(const Matrix& a, const Matrix& b, const HeatTraceParams& params = {},
           std::uint64_t seed = 0);

}  // namespace resim

#endif  // RESIM_TOPOLOGY_H_
