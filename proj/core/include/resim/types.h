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

#ifndef RESIM_TYPES_H_
#define RESIM_TYPES_H_

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace resim {

// All arithmetic is carried out in double precision.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class FailureKind {
  kNumerical,
  kUndefinedInput,
  kDimensionMismatch,
};

std::string_view to_string(FailureKind kind);

// Thrown by measures and primitives when a result cannot be produced. The
// registry turns it into a failed MeasureResult; it never escapes a benchmark
// run.
class MeasureError : public std::runtime_error {
 public:
  MeasureError(FailureKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  FailureKind kind() const noexcept { return kind_; }

 private:
  FailureKind kind_;
};

// Malformed files, unreadable paths.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Failure {
  FailureKind kind;
  std::string message;
};

// A finite score or a structured failure, never both.
class MeasureResult {
 public:
  static MeasureResult success(double value);
  static MeasureResult failure(FailureKind kind, std::string message);

  bool ok() const { return std::holds_alternative<double>(state_); }
  // Precondition: ok().
  double value() const { return std::get<double>(state_); }
  // Precondition: !ok().
  const Failure& error() const { return std::get<Failure>(state_); }

 private:
  explicit MeasureResult(std::variant<double, Failure> state)
      : state_(std::move(state)) {}

  std::variant<double, Failure> state_;
};

// N instances (rows) by D features (columns) plus identity metadata.
struct Representation {
  Matrix data;
  std::string model_id;
  int layer = 0;
  std::optional<std::string> group;

  // Validates N >= 2, D >= 1 and finiteness; throws MeasureError otherwise.
  static Representation make(Matrix data, std::string model_id, int layer = 0,
                             std::optional<std::string> group = std::nullopt);

  Index instances() const { return data.rows(); }
  Index features() const { return data.cols(); }
};

// Row-stochastic class probabilities with ground-truth labels.
struct ModelOutputs {
  Matrix probs;
  std::vector<int> labels;

  static ModelOutputs make(Matrix probs, std::vector<int> labels);

  Index instances() const { return probs.rows(); }
  Index classes() const { return probs.cols(); }
};

// Throws kUndefinedInput if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

// Throws kDimensionMismatch unless both matrices have the same row count.
void require_same_instances(const Matrix& a, const Matrix& b);

}  // namespace resim

#endif  // RESIM_TYPES_H_
