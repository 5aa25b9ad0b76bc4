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

#include <benchmark/benchmark.h>

#include "resim/alignment.h"
#include "resim/neighbors.h"
#include "resim/rsm.h"
#include "resim/synthgen.h"
#include "resim/topology.h"

namespace {

using resim::Matrix;

void BM_Cka(benchmark::State& state) {
  const Matrix a = resim::gaussian_matrix(state.range(0), 64, 1);
  const Matrix b = resim::gaussian_matrix(state.range(0), 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(resim::cka_linear(a, b));
}
BENCHMARK(BM_Cka)->Arg(200)->Arg(1000)->Arg(5000);

void BM_OrthProcrustes(benchmark::State& state) {
  const Matrix a = resim::gaussian_matrix(state.range(0), 64, 1);
  const Matrix b = resim::gaussian_matrix(state.range(0), 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(resim::orth_procrustes(a, b));
}
BENCHMARK(BM_OrthProcrustes)->Arg(200)->Arg(1000)->Arg(5000);

void BM_JaccardKnn(benchmark::State& state) {
  const Matrix a = resim::gaussian_matrix(state.range(0), 64, 1);
  const Matrix b = resim::gaussian_matrix(state.range(0), 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(resim::jaccard_knn(a, b));
}
BENCHMARK(BM_JaccardKnn)->Arg(200)->Arg(1000);

void BM_Imd(benchmark::State& state) {
  const Matrix a = resim::gaussian_matrix(state.range(0), 16, 1);
  const Matrix b = resim::gaussian_matrix(state.range(0), 16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(resim::imd(a, b, {}, 0));
}
BENCHMARK(BM_Imd)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
