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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "resim/random.h"

namespace resim {
namespace {

constexpr int kMaxRefinementRounds = 16;

// Color refinement (1-WL) followed by a per-color occurrence index: a key per
// vertex that follows the vertex under relabeling whenever refinement
// separates all vertices.
std::vector<std::uint64_t> vertex_keys(const Graph& g) {
  const Index n = g.size();
  std::vector<std::uint64_t> color(n), next(n);
  for (Index i = 0; i < n; ++i) color[i] = mix64(g.adjacency[i].size());

  auto distinct = [](std::vector<std::uint64_t> c) {
    std::sort(c.begin(), c.end());
    return std::unique(c.begin(), c.end()) - c.begin();
  };
  auto classes = distinct(color);
  std::vector<std::uint64_t> around;
  for (int round = 0; round < kMaxRefinementRounds; ++round) {
    for (Index i = 0; i < n; ++i) {
      around.clear();
      for (Index j : g.adjacency[i]) around.push_back(color[j]);
      std::sort(around.begin(), around.end());
      std::uint64_t h = hash_combine(0x5eed, color[i]);
      for (std::uint64_t c : around) h = hash_combine(h, c);
      next[i] = h;
    }
    color.swap(next);
    const auto refined = distinct(color);
    if (refined == classes) break;
    classes = refined;
  }

  std::map<std::uint64_t, std::uint64_t> seen;
  std::vector<std::uint64_t> keys(n);
  for (Index i = 0; i < n; ++i) {
    keys[i] = hash_combine(color[i], seen[color[i]]++);
  }
  return keys;
}

struct Operator {
  std::vector<std::vector<Index>> adjacency;
  Vector inv_sqrt_degree;  // 0 for isolated vertices
  Matrix kernel;           // orthonormal null-space basis, one column per component

  Vector apply(const Vector& x) const {
    const Index n = static_cast<Index>(adjacency.size());
    Vector y(n);
    for (Index i = 0; i < n; ++i) {
      if (adjacency[i].empty()) {
        y(i) = 0.0;
        continue;
      }
      double acc = 0.0;
      for (Index j : adjacency[i]) acc += inv_sqrt_degree(j) * x(j);
      y(i) = x(i) - inv_sqrt_degree(i) * acc;
    }
    return y;
  }

  void deflate(Vector& x) const { x -= kernel * (kernel.transpose() * x); }
};

Operator make_operator(const Graph& g) {
  const Index n = g.size();
  Operator op;
  op.adjacency = g.adjacency;
  op.inv_sqrt_degree = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const auto deg = static_cast<double>(g.adjacency[i].size());
    if (deg > 0) op.inv_sqrt_degree(i) = 1.0 / std::sqrt(deg);
  }

  // Null space of the normalized Laplacian: D^{1/2} 1 on each component
  // (e_i for an isolated vertex).
  std::vector<Index> component(n, -1);
  std::vector<Vector> basis;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const auto id = static_cast<Index>(basis.size());
    Vector z = Vector::Zero(n);
    component[s] = id;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      const auto deg = static_cast<double>(g.adjacency[v].size());
      z(v) = deg > 0 ? std::sqrt(deg) : 1.0;
      for (Index w : g.adjacency[v]) {
        if (component[w] < 0) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
    basis.push_back(z / z.norm());
  }
  op.kernel.resize(n, static_cast<Index>(basis.size()));
  for (Index c = 0; c < op.kernel.cols(); ++c) op.kernel.col(c) = basis[c];
  return op;
}

struct QuadratureNode {
  double theta;
  double weight;
};

// Lanczos with full reorthogonalization from `start`; appends Gauss nodes
// whose weights already carry the squared start norm.
void lanczos_quadrature(const Operator& op, const Vector& start, int steps,
                        std::vector<QuadratureNode>& nodes) {
  const double norm2 = start.squaredNorm();
  if (!(norm2 > 1e-24)) return;
  const Index n = start.size();
  const int m = static_cast<int>(std::min<Index>(steps, n));
  Matrix q(n, m);
  std::vector<double> alpha, beta;
  q.col(0) = start / std::sqrt(norm2);
  for (int j = 0; j < m; ++j) {
    Vector z = op.apply(q.col(j));
    const double a = q.col(j).dot(z);
    alpha.push_back(a);
    z -= a * q.col(j);
    if (j > 0) z -= beta.back() * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      z -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * z);
      op.deflate(z);
    }
    const double b = z.norm();
    if (j + 1 == m || b < 1e-10) break;
    beta.push_back(b);
    q.col(j + 1) = z / b;
  }

  const auto k = static_cast<Index>(alpha.size());
  Vector diag = Eigen::Map<Vector>(alpha.data(), k);
  Vector sub = Vector::Zero(std::max<Index>(k - 1, 0));
  for (Index i = 0; i + 1 < k; ++i) sub(i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  if (k == 1) {
    nodes.push_back({diag(0), norm2});
    return;
  }
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) {
    throw MeasureError(FailureKind::kNumerical, "Lanczos tridiagonal solve failed");
  }
  for (Index i = 0; i < k; ++i) {
    const double first = eig.eigenvectors()(0, i);
    nodes.push_back({eig.eigenvalues()(i), norm2 * first * first});
  }
}

}  // namespace

const std::vector<double>& default_time_grid() {
  static const std::vector<double> grid = [] {
    constexpr int kPoints = 256;
    std::vector<double> t(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      t[i] = std::pow(10.0, -2.0 + 4.0 * i / (kPoints - 1));
    }
    return t;
  }();
  return grid;
}

Graph Graph::from_edges(Index n,
                        const std::vector<std::pair<Index, Index>>& edges) {
  Graph g;
  g.adjacency.resize(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw MeasureError(FailureKind::kUndefinedInput, "invalid graph edge");
    }
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

Graph knn_graph(const Matrix& m, int k) {
  const Index n = m.rows();
  if (k < 1 || k >= n) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "graph k must satisfy 0 < k < N (k=" + std::to_string(k) +
                           ", N=" + std::to_string(n) + ")");
  }
  const Matrix t = m.transpose();
  std::vector<std::pair<Index, Index>> edges;
  edges.reserve(static_cast<std::size_t>(n * k));
  std::vector<double> dist(n);
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      dist[j] = (t.col(i) - t.col(j)).squaredNorm();
    }
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    order.erase(order.begin() + i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Index a, Index b) {
                        if (dist[a] != dist[b]) return dist[a] < dist[b];
                        return a < b;
                      });
    for (int r = 0; r < k; ++r) edges.emplace_back(i, order[r]);
  }
  return Graph::from_edges(n, edges);
}

Matrix normalized_laplacian(const Graph& g) {
  const Index n = g.size();
  Matrix l = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto di = static_cast<double>(g.adjacency[i].size());
    if (di == 0) continue;
    l(i, i) = 1.0;
    for (Index j : g.adjacency[i]) {
      const auto dj = static_cast<double>(g.adjacency[j].size());
      l(i, j) = -1.0 / std::sqrt(di * dj);
    }
  }
  return l;
}

HeatTraceDescriptor heat_trace(const Graph& g, const HeatTraceParams& params,
                               std::uint64_t seed,
                               const std::vector<double>& t_grid) {
  if (params.lanczos_steps < 1 || params.probes < 1 || params.repeats < 1) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "heat trace needs positive steps, probes and repeats");
  }
  const Index n = g.size();
  if (n < 1) {
    throw MeasureError(FailureKind::kUndefinedInput, "empty graph");
  }
  const Operator op = make_operator(g);
  const std::vector<std::uint64_t> keys = vertex_keys(g);

  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(params.repeats) * params.probes *
                params.lanczos_steps);
  Vector probe(n);
  const std::uint64_t base = mix64(seed);
  for (int r = 0; r < params.repeats; ++r) {
    for (int p = 0; p < params.probes; ++p) {
      const std::uint64_t stream =
          hash_combine(base, static_cast<std::uint64_t>(r) * params.probes + p);
      for (Index i = 0; i < n; ++i) {
        probe(i) = (hash_combine(stream, keys[i]) & 1ULL) ? 1.0 : -1.0;
      }
      op.deflate(probe);
      lanczos_quadrature(op, probe, params.lanczos_steps, nodes);
    }
  }

  const double samples = static_cast<double>(params.repeats) * params.probes;
  const auto components = static_cast<double>(op.kernel.cols());
  HeatTraceDescriptor out;
  out.t_grid = t_grid;
  out.seed = seed;
  out.params = params;
  out.traces.resize(t_grid.size());
  for (std::size_t s = 0; s < t_grid.size(); ++s) {
    double acc = 0.0;
    for (const auto& node : nodes) acc += node.weight * std::exp(-t_grid[s] * node.theta);
    out.traces[s] = components + acc / samples;
  }
  return out;
}

HeatTraceDescriptor heat_trace(const Matrix& m, const HeatTraceParams& params,
                               std::uint64_t seed,
                               const std::vector<double>& t_grid) {
  require_finite(m, "representation");
  return heat_trace(knn_graph(m, params.graph_k), params, seed, t_grid);
}

double imd_distance(const HeatTraceDescriptor& a, const HeatTraceDescriptor& b) {
  if (a.t_grid != b.t_grid) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "heat trace descriptors use different time grids");
  }
  double best = 0.0;
  for (std::size_t s = 0; s < a.t_grid.size(); ++s) {
    const double t = a.t_grid[s];
    const double weight = std::exp(-2.0 * (t + 1.0 / t));
    best = std::max(best, weight * std::abs(a.traces[s] - b.traces[s]));
  }
  return best;
}

double imd(const Matrix& a, const Matrix& b, const HeatTraceParams& params,
           std::uint64_t seed) {
  return imd_distance(heat_trace(a, params, seed), heat_trace(b, params, seed));
}

}  // namespace resim
