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

#include "resim/types.h"

#include <cmath>
#include <sstream>

namespace resim {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kNumerical:
      return "numerical";
    case FailureKind::kUndefinedInput:
      return "undefined-input";
    case FailureKind::kDimensionMismatch:
      return "dimension-mismatch";
  }
  return "unknown";
}

MeasureResult MeasureResult::success(double value) {
  if (!std::isfinite(value)) {
    return failure(FailureKind::kNumerical, "measure produced a non-finite value");
  }
  return MeasureResult(value);
}

MeasureResult MeasureResult::failure(FailureKind kind, std::string message) {
  return MeasureResult(Failure{kind, std::move(message)});
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       std::string(what) + " contains non-finite entries");
  }
}

void require_same_instances(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "instance counts differ: " << a.rows() << " vs " << b.rows();
    throw MeasureError(FailureKind::kDimensionMismatch, os.str());
  }
}

Representation Representation::make(Matrix data, std::string model_id,
                                    int layer,
                                    std::optional<std::string> group) {
  if (data.rows() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "representation needs at least two instances");
  }
  if (data.cols() < 1) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "representation needs at least one feature");
  }
  if (layer < 0) {
    throw MeasureError(FailureKind::kUndefinedInput, "negative layer index");
  }
  require_finite(data, "representation");
  return Representation{std::move(data), std::move(model_id), layer,
                        std::move(group)};
}

ModelOutputs ModelOutputs::make(Matrix probs, std::vector<int> labels) {
  if (probs.cols() < 2) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "model outputs need at least two classes");
  }
  if (static_cast<Index>(labels.size()) != probs.rows()) {
    throw MeasureError(FailureKind::kDimensionMismatch,
                       "label count does not match output rows");
  }
  require_finite(probs, "model outputs");
  if ((probs.array() < 0.0).any()) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "model outputs contain negative probabilities");
  }
  for (Index i = 0; i < probs.rows(); ++i) {
    if (std::abs(probs.row(i).sum() - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "row " << i << " of model outputs does not sum to 1";
      throw MeasureError(FailureKind::kUndefinedInput, os.str());
    }
  }
  for (int label : labels) {
    if (label < 0 || label >= probs.cols()) {
      throw MeasureError(FailureKind::kUndefinedInput, "label out of range");
    }
  }
  return ModelOutputs{std::move(probs), std::move(labels)};
}

}  // namespace resim
