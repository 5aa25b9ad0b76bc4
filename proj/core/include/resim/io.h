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

#ifndef RESIM_IO_H_
#define RESIM_IO_H_

#include <filesystem>
#include <string_view>
#include <vector>

#include "resim/types.h"

namespace resim {

enum class MatrixFormat { kNpy, kCsv };

// Picks kCsv for ".csv"/".txt" extensions, kNpy otherwise.
MatrixFormat format_for_path(const std::filesystem::path& path);

// NPY v1/v2/v3 with descr '<f4', '<f8', '<i4' or '<i8' and a 2-D shape.
// Fortran-ordered payloads are transposed into row-major instance order.
// Throws FormatError on malformed files and MeasureError(kUndefinedInput) on
// non-finite entries.
Matrix read_npy(const std::filesystem::path& path);
Matrix parse_npy(std::string_view bytes);

// Writes a C-ordered '<f8' NPY v1.0 file.
void write_npy(const std::filesystem::path& path, const Matrix& m);
std::string serialize_npy(const Matrix& m);

// Comma-separated, one instance per row. A first line that does not parse as
// numbers is treated as a header and skipped.
Matrix read_csv(const std::filesystem::path& path);
Matrix parse_csv(std::string_view text);

Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
Matrix read_matrix(const std::filesystem::path& path);

// Model id defaults to the file stem.
Representation load_representation(const std::filesystem::path& path,
                                   MatrixFormat format);
Representation load_representation(const std::filesystem::path& path);

// Integer labels from an N-vector (1-D NPY, N x 1 NPY or one-column CSV).
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path,
                  const std::vector<int>& labels);

}  // namespace resim

#endif  // RESIM_IO_H_
