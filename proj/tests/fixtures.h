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

#ifndef RESIM_TESTS_FIXTURES_H_
#define RESIM_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "resim/synthgen.h"
#include "resim/types.h"

namespace fixtures {

using resim::Index;
using resim::Matrix;

inline Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  return resim::gaussian_matrix(rows, cols, seed);
}

inline std::vector<Index> permutation(Index n, std::uint64_t seed) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Matrix permute_rows(const Matrix& m, const std::vector<Index>& p) {
  Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) out.row(i) = m.row(p[static_cast<std::size_t>(i)]);
  return out;
}

inline Matrix permute_cols(const Matrix& m, const std::vector<Index>& p) {
  Matrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) out.col(j) = m.col(p[static_cast<std::size_t>(j)]);
  return out;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("resim_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures

#endif  // RESIM_TESTS_FIXTURES_H_
