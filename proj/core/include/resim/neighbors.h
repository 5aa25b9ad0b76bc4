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

#ifndef RESIM_NEIGHBORS_H_
#define RESIM_NEIGHBORS_H_

#include "resim/repcore.h"
#include "resim/types.h"

// Measures comparing the cosine k-nearest-neighbor structure of two
// representations over the same instances.

namespace resim {

// Mean Jaccard index of the per-instance k-NN sets.
double jaccard_knn(const Matrix& a, const Matrix& b, int k = kDefaultNeighbors);

// Mean over instances of sum_{j in A_i & B_i} 2 / (rank_A(j) + rank_B(j)),
// normalized by the k-th harmonic number so identical lists score 1.
double rank_sim(const Matrix& a, const Matrix& b, int k = kDefaultNeighbors);

// Per instance, cosine between its similarity profiles in a and in b over the
// union of both k-NN sets (ascending index order); mean over instances whose
// profiles are both nonzero.
double second_order_cosine(const Matrix& a, const Matrix& b,
                           int k = kDefaultNeighbors);

}  // namespace resim

#endif  // RESIM_NEIGHBORS_H_
