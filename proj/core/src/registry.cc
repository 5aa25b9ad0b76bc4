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

#include "resim/registry.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "resim/alignment.h"
#include "resim/cca.h"
#include "resim/neighbors.h"
#include "resim/repcore.h"
#include "resim/rsm.h"
#include "resim/stats.h"
#include "resim/topology.h"

namespace resim {
namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

int int_param(const Hyperparams& h, const std::string& key) {
  const double v = h.at(key);
  if (v != std::floor(v) || v < 0 || v > 1e9) {
    throw MeasureError(FailureKind::kUndefinedInput,
                       "hyperparameter '" + key + "' must be a nonnegative integer");
  }
  return static_cast<int>(v);
}

HeatTraceParams heat_params(const Hyperparams& h) {
  HeatTraceParams p;
  p.graph_k = int_param(h, "graph_k");
  p.lanczos_steps = int_param(h, "lanczos_steps");
  p.probes = int_param(h, "probes");
  p.repeats = int_param(h, "repeats");
  return p;
}

std::uint64_t seed_param(const Hyperparams& h) {
  return static_cast<std::uint64_t>(int_param(h, "seed"));
}

// Adapts a plain pairwise function that takes no hyperparameters.
MeasureFn plain(double (*f)(const Matrix&, const Matrix&)) {
  return [f](const Matrix& a, const Matrix& b, const Hyperparams&) {
    return f(a, b);
  };
}

MeasureFn with_k(double (*f)(const Matrix&, const Matrix&, int)) {
  return [f](const Matrix& a, const Matrix& b, const Hyperparams& h) {
    return f(a, b, int_param(h, "k"));
  };
}

MeasureRegistry make_builtin() {
  using enum Family;
  using enum Preprocessing;
  constexpr auto kSim = Orientation::kSimilarity;
  constexpr auto kDist = Orientation::kDistance;
  const Hyperparams knn{{"k", kDefaultNeighbors}};

  MeasureRegistry r;
  r.add({"2nd-cos", "2nd-Cos", "Second Order Cosine Similarity", kNeighbors,
         kSim, {}, knn, false, with_k(&second_order_cosine), std::nullopt});
  r.add({"aligncos", "AlignCos", "Aligned Cosine Similarity", kAlignment, kSim,
         {}, {}, false, plain(&aligned_cosine), std::nullopt});
  r.add({"angshape", "AngShape", "Orthogonal Angular Shape Metric", kAlignment,
         kDist, {kCenterColumns, kUnitFrobenius}, {}, false,
         plain(&angular_shape), std::nullopt});
  r.add({"cka", "CKA", "Centered Kernel Alignment", kRsm, kSim,
         {kCenterColumns}, {}, false, plain(&cka_linear), std::nullopt});
  r.add({"concdiff", "ConcDiff", "Concentricity Difference", kStatistic, kDist,
         {}, {}, false, plain(&concentricity_diff), std::nullopt});
  r.add({"distcorr", "DistCorr", "Distance Correlation", kRsm, kSim, {}, {},
         false, plain(&dist_corr), std::nullopt});
  r.add({"eos", "EOS", "Eigenspace Overlap Score", kRsm, kSim, {}, {}, false,
         plain(&eigenspace_overlap), std::nullopt});
  r.add({"gulp", "GULP", "GULP", kRsm, kDist, {kCenterColumns, kSqrtNFrobenius},
         {{"lambda", 0.0}}, false,
         [](const Matrix& a, const Matrix& b, const Hyperparams& h) {
           return gulp(a, b, h.at("lambda"));
         },
         std::nullopt});
  r.add({"hardcorr", "HardCorr", "Hard Correlation Match", kAlignment, kSim,
         {}, {}, false, plain(&hard_corr_match), std::nullopt});

  const Hyperparams imd_defaults{{"graph_k", 5},
                                 {"lanczos_steps", 10},
                                 {"probes", 800},
                                 {"repeats", 5},
                                 {"seed", 0}};
  Staged imd_stages{
      [](const Matrix& m, const Hyperparams& h) -> std::any {
        return heat_trace(m, heat_params(h), seed_param(h));
      },
      [](const std::any& a, const std::any& b, const Hyperparams&) {
        return imd_distance(std::any_cast<const HeatTraceDescriptor&>(a),
                            std::any_cast<const HeatTraceDescriptor&>(b));
      }};
  r.add({"imd", "IMD", "IMD Score", kTopology, kDist, {}, imd_defaults, true,
         [](const Matrix& a, const Matrix& b, const Hyperparams& h) {
           return imd(a, b, heat_params(h), seed_param(h));
         },
         imd_stages});

  r.add({"jaccard", "Jaccard", "Jaccard Similarity", kNeighbors, kSim, {}, knn,
         false, with_k(&jaccard_knn), std::nullopt});
  r.add({"linreg", "LinReg", "Linear Regression", kAlignment, kSim,
         {kCenterColumns}, {}, false, plain(&linreg_r2), std::nullopt});
  r.add({"magdiff", "MagDiff", "Magnitude Difference", kStatistic, kDist, {},
         {}, false, plain(&magnitude_diff), std::nullopt});
  r.add({"orthproc", "OrthProc", "Orthogonal Procrustes", kAlignment, kDist,
         {kCenterColumns, kUnitFrobenius}, {}, false, plain(&orth_procrustes),
         std::nullopt});
  r.add({"pwcca", "PWCCA", "Permutation-Weighted CCA", kCca, kSim, {}, {},
         false, plain(&pwcca), std::nullopt});
  r.add({"permproc", "PermProc", "Permutation Procrustes", kAlignment, kDist,
         {}, {}, false, plain(&perm_procrustes), std::nullopt});
  r.add({"procdist", "ProcDist", "Procrustes Size-and-Shape-Distance",
         kAlignment, kDist, {kCenterColumns}, {}, false,
         plain(&procrustes_size_shape), std::nullopt});
  r.add({"rsa", "RSA", "Representational Similarity Analysis", kRsm, kSim, {},
         {}, false, plain(&rsa), std::nullopt});
  r.add({"rsmdiff", "RSMDiff", "RSM Norm Difference", kRsm, kDist, {}, {},
         false, plain(&rsm_norm_diff), std::nullopt});
  r.add({"ranksim", "RankSim", "Rank Similarity", kNeighbors, kSim, {}, knn,
         false, with_k(&rank_sim), std::nullopt});
  r.add({"svcca", "SVCCA", "Singular Value CCA", kCca, kSim, {},
         {{"variance_kept", kSvccaVarianceKept}}, false,
         [](const Matrix& a, const Matrix& b, const Hyperparams& h) {
           return svcca(a, b, h.at("variance_kept"));
         },
         std::nullopt});
  r.add({"softcorr", "SoftCorr", "Soft Correlation Match", kAlignment, kSim,
         {}, {}, false, plain(&soft_corr_match), std::nullopt});
  r.add({"unifdiff", "UnifDiff", "Uniformity Difference", kStatistic, kDist,
         {}, {{"t", kUniformityTemperature}}, false,
         [](const Matrix& a, const Matrix& b, const Hyperparams& h) {
           return uniformity_diff(a, b, h.at("t"));
         },
         std::nullopt});
  return r;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kAlignment: return "alignment";
    case Family::kRsm: return "rsm";
    case Family::kCca: return "cca";
    case Family::kNeighbors: return "neighbors";
    case Family::kStatistic: return "statistic";
    case Family::kTopology: return "topology";
  }
  return "unknown";
}

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::kSimilarity ? "similarity" : "distance";
}

std::string_view to_string(Preprocessing step) {
  switch (step) {
    case Preprocessing::kCenterColumns: return "center-columns";
    case Preprocessing::kUnitFrobenius: return "unit-frobenius";
    case Preprocessing::kSqrtNFrobenius: return "sqrt-n-frobenius";
  }
  return "unknown";
}

const MeasureRegistry& MeasureRegistry::builtin() {
  static const MeasureRegistry registry = make_builtin();
  return registry;
}

void MeasureRegistry::add(MeasureDescriptor descriptor) {
  descriptor.id = lowercase(descriptor.id);
  const std::string key = descriptor.id;
  measures_.insert_or_assign(key, std::move(descriptor));
}

const MeasureDescriptor& MeasureRegistry::get(std::string_view id) const {
  auto it = measures_.find(lowercase(id));
  if (it == measures_.end()) {
    throw std::out_of_range("unknown measure '" + std::string(id) + "'");
  }
  return it->second;
}

bool MeasureRegistry::contains(std::string_view id) const {
  return measures_.contains(lowercase(id));
}

std::vector<std::string> MeasureRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(measures_.size());
  for (const auto& [id, d] : measures_) out.push_back(id);
  return out;
}

Hyperparams merged_hyperparams(const MeasureDescriptor& d,
                               const Hyperparams& overrides) {
  Hyperparams h = d.hyperparams;
  for (const auto& [key, value] : overrides) {
    if (h.contains(key)) h[key] = value;
  }
  return h;
}

MeasureResult capture(const std::function<double()>& compute) {
  try {
    return MeasureResult::success(compute());
  } catch (const MeasureError& e) {
    return MeasureResult::failure(e.kind(), e.what());
  } catch (const std::exception& e) {
    return MeasureResult::failure(FailureKind::kNumerical, e.what());
  }
}

MeasureResult MeasureRegistry::evaluate(std::string_view id, const Matrix& a,
                                        const Matrix& b,
                                        const Hyperparams& overrides) const {
  const MeasureDescriptor& d = get(id);
  if (!d.allows_different_instances && a.rows() != b.rows()) {
    return MeasureResult::failure(
        FailureKind::kDimensionMismatch,
        "instance counts differ: " + std::to_string(a.rows()) + " vs " +
            std::to_string(b.rows()));
  }
  const Hyperparams h = merged_hyperparams(d, overrides);
  return capture([&] { return d.fn(a, b, h); });
}

}  // namespace resim
