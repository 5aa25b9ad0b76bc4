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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Usage: acceptance <path to resim binary>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "oracles.h"
#include "resim/alignment.h"
#include "resim/config.h"
#include "resim/evalkit.h"
#include "resim/harness.h"
#include "resim/random.h"
#include "resim/registry.h"
#include "resim/rsm.h"
#include "resim/suites.h"
#include "resim/synthgen.h"
#include "resim/topology.h"

namespace {

using namespace resim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Seed for the prediction-test anchor.
constexpr std::uint64_t kGoldenSeed = 7;

// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += ok ? 0 : 1;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::isfinite(got) && std::abs(got - want) <= tol, os.str());
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ - failed_ << "/" << checks_ << " checks";
    for (const auto& f : failures_) os << "\n    " << f;
    return os.str();
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Invariances and row-permutation consistency of all measures.
void invariance(Check& c) {
  const auto start = Clock::now();
  const MeasureRegistry& registry = MeasureRegistry::builtin();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix r = gaussian_matrix(100, 20, hash_combine(seed, 1));
    const Matrix other = gaussian_matrix(100, 20, hash_combine(seed, 2));
    const Matrix q = random_orthogonal(20, hash_combine(seed, 3));
    const auto perm = fixtures::permutation(100, hash_combine(seed, 4));
    const std::string tag = "seed " + std::to_string(seed);
    for (double scale : {0.5, 3.0}) {
      const Matrix mapped = scale * r * q;
      c.near(cka_linear(r, mapped), 1, 1e-6, tag + " cka");
      c.near(orth_procrustes(r, mapped), 0, 1e-6, tag + " orthproc");
    }
    c.near(angular_shape(r, r * q), 0, 1e-6, tag + " angshape");
    c.near(rsm_norm_diff(r, r * q), 0, 1e-8, tag + " rsmdiff");
    const Matrix shifted = (2 * r).rowwise() + Vector::LinSpaced(20, -3, 3).transpose();
    c.near(dist_corr(r, shifted), 1, 1e-8, tag + " distcorr");

    const Matrix pr = fixtures::permute_rows(r, perm);
    const Matrix po = fixtures::permute_rows(other, perm);
    for (const std::string& id : registry.ids()) {
      const Hyperparams h = {{"seed", static_cast<double>(seed)}};
      const MeasureResult a = registry.evaluate(id, r, other, h);
      const MeasureResult b = registry.evaluate(id, pr, po, h);
      c.expect(a.ok() && b.ok(), tag + " " + id + " evaluates");
      if (a.ok() && b.ok()) c.near(b.value(), a.value(), 1e-8, tag + " " + id + " permuted");
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 120, "runtime " + std::to_string(elapsed) + " s < 120 s");
}

std::vector<PairScore> to_pair_scores(const std::vector<std::string>& ids,
                                      const std::map<std::pair<int, int>, double>& table) {
  std::vector<PairScore> out;
  for (const auto& [key, v] : table) {
    out.push_back(PairScore::make(ids[key.first], ids[key.second], MeasureResult::success(v),
                                  Orientation::kSimilarity));
  }
  return out;
}

// 2. Brute-force oracle equivalence.
void oracles(Check& c) {
  std::mt19937_64 rng(2024);
  auto small_int = [&](int range) { return static_cast<double>(rng() % range); };
  for (int trial = 0; trial < 200; ++trial) {
    const std::string tag = "trial " + std::to_string(trial);

    // spearman on <= 8 points, ties included
    const int n = 3 + static_cast<int>(rng() % 6);
    std::vector<double> x(n), y(n);
    do {
      for (int i = 0; i < n; ++i) x[i] = small_int(5), y[i] = small_int(5);
    } while (oracle::ranks(x) == std::vector<double>(n, (n + 1) / 2.0) ||
             oracle::ranks(y) == std::vector<double>(n, (n + 1) / 2.0));
    c.near(spearman(Eigen::Map<Vector>(x.data(), n), Eigen::Map<Vector>(y.data(), n)),
           oracle::spearman(x, y), 1e-12, tag + " spearman");

    // auprc: exact rational reference
    std::vector<int> labels(n);
    do {
      for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng() % 2);
    } while (std::count(labels.begin(), labels.end(), 1) == 0 ||
             std::count(labels.begin(), labels.end(), 0) == 0);
    const oracle::Rational ap = oracle::auprc(x, labels);
    c.expect(auprc(Eigen::Map<Vector>(x.data(), n), labels) == ap.value(),
             tag + " auprc equals " + std::to_string(ap.num) + "/" + std::to_string(ap.den));

    // conformity_groups on <= 4 groups, <= 8 models
    const int groups = 2 + static_cast<int>(rng() % 3);
    std::vector<int> group;
    for (int g = 0; g < groups; ++g) {
      const int members = 2 + static_cast<int>(rng() % (groups == 4 ? 1 : 2));
      for (int m = 0; m < members; ++m) group.push_back(g);
    }
    std::vector<std::string> ids;
    std::map<std::string, std::string> group_of;
    std::map<std::pair<int, int>, double> table;
    std::vector<double> pair_values;
    std::vector<int> pair_labels;
    for (std::size_t i = 0; i < group.size(); ++i) {
      ids.push_back("m" + std::to_string(i));
      group_of[ids.back()] = "g" + std::to_string(group[i]);
    }
    for (int i = 0; i < static_cast<int>(group.size()); ++i) {
      for (int j = i + 1; j < static_cast<int>(group.size()); ++j) {
        table[{i, j}] = small_int(6);
      }
    }
    for (const auto& [key, v] : table) {
      pair_values.push_back(v);
      pair_labels.push_back(group[key.first] == group[key.second] ? 1 : 0);
    }
    const auto [ok, total] = oracle::group_triples(group, table);
    const GroupConformity gc = conformity_groups(to_pair_scores(ids, table), group_of);
    c.expect(gc.conformity_rate == static_cast<double>(ok) / static_cast<double>(total),
             tag + " conformity_groups");
    c.expect(gc.auprc == oracle::auprc(pair_values, pair_labels).value(),
             tag + " group auprc");

    // conformity_layers for L <= 5
    const int layers = 3 + static_cast<int>(rng() % 3);
    std::map<std::pair<int, int>, double> layer_table;
    std::set<double> distinct;
    do {  // constant tables have no rank correlation
      distinct.clear();
      for (int i = 1; i <= layers; ++i) {
        for (int j = i + 1; j <= layers; ++j) {
          layer_table[{i, j}] = small_int(6);
          distinct.insert(layer_table[{i, j}]);
        }
      }
    } while (distinct.size() < 2);
    const auto [lok, ltotal] = oracle::layer_tuples(layers, layer_table);
    c.expect(conformity_layers(layer_table, layers).conformity_rate ==
                 static_cast<double>(lok) / static_cast<double>(ltotal),
             tag + " conformity_layers");

    // dense references on tiny inputs
    const Matrix a = gaussian_matrix(6, 2, hash_combine(trial, 10));
    const Matrix b = gaussian_matrix(6, 2, hash_combine(trial, 11));
    c.near(dist_corr(a, b), oracle::dist_corr(a, b), 1e-8, tag + " dist_corr");
    c.near(gulp(a, b, 0.0), oracle::gulp0(a, b), 1e-8, tag + " gulp");
    const Index d = 1 + trial % 5;
    const Matrix ha = gaussian_matrix(12, d, hash_combine(trial, 12));
    const Matrix hb = gaussian_matrix(12, d, hash_combine(trial, 13));
    c.near(hard_corr_match(ha, hb), oracle::hard_corr(ha, hb), 1e-12, tag + " hard_corr");
  }
}

// 3. Rotation chain anchors.
void rotation_chain(Check& c) {
  RotationChainConfig config;
  config.seed = 3;
  const auto chain = gen_rotation_chain(config);
  c.expect(chain.size() == 5, "five layers");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      c.near(angular_shape(chain[i].data, chain[j].data), 0.2 * static_cast<double>(j - i),
             1e-8, "angshape(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  TestConfig spec;
  spec.kind = TestKind::kLayer;
  spec.name = "rotation-chain";
  const auto cells = run_layer_test(spec, {chain}, {"angshape"});
  c.expect(cells.size() == 1 && cells[0].ok(), "layer cell succeeds");
  if (!cells.empty() && cells[0].ok()) {
    c.near(cells[0].scores.at("conformity"), 1.0, 0.0, "layer conformity");
    c.near(cells[0].scores.at("spearman"), 1.0, 1e-12, "layer spearman");
  }
}

// 4. Planted groups end to end.
void group_test(Check& c) {
  const auto start = Clock::now();
  TestConfig spec;
  spec.kind = TestKind::kGroup;
  spec.name = "groups";
  GroupedConfig config;
  config.seed = 11;
  const auto cells = run_group_test(spec, gen_grouped(config), {"cka", "orthproc", "jaccard"});
  for (const CellResult& cell : cells) {
    c.expect(cell.ok(), cell.measure + " succeeds");
    if (!cell.ok()) continue;
    c.near(cell.scores.at("auprc"), 1.0, 0.0, cell.measure + " auprc");
    c.near(cell.scores.at("conformity"), 1.0, 0.0, cell.measure + " conformity");
  }
  config.between_map = GroupMap::kOrthogonal;
  const auto control = run_group_test(spec, gen_grouped(config), {"cka"});
  c.expect(control.size() == 1 && control[0].ok(), "control cell succeeds");
  if (!control.empty() && control[0].ok()) {
    const double ap = control[0].scores.at("auprc");
    c.expect(ap <= 0.6, "orthogonal control cka auprc " + std::to_string(ap) + " <= 0.6");
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60, "runtime " + std::to_string(elapsed) + " s < 60 s");
}

// 5. Graded output divergence end to end.
void prediction_test(Check& c) {
  OutputsConfig config;
  config.seed = kGoldenSeed;
  config.divergence = divergence_grid(10, 0.15);
  const OutputFamily family = gen_outputs(config);
  TestConfig spec;
  spec.kind = TestKind::kOutputCorr;
  spec.name = "prediction-jsd";
  spec.output_diff = OutputDiff::kJsd;
  const auto cells = run_prediction_test(spec, family.representations, family.outputs,
                                         {"orthproc"});
  c.expect(cells.size() == 1 && cells[0].ok(), "orthproc cell succeeds");
  if (!cells.empty() && cells[0].ok()) {
    c.expect(cells[0].pairs == 45, "45 pairs");
    const double rho = cells[0].scores.at("spearman");
    c.expect(rho >= 0.9, "spearman " + std::to_string(rho) + " >= 0.9");
  }

  config.divergence.assign(10, 0.0);
  const OutputFamily same = gen_outputs(config);
  const auto degenerate = run_prediction_test(spec, family.representations, same.outputs,
                                              {"orthproc"});
  c.expect(degenerate.size() == 1 && !degenerate[0].ok() && degenerate[0].scores.empty(),
           "identical outputs give a failed cell");
}

// 6. Output-difference extremes.
void output_extremes(Check& c) {
  Matrix p(1, 2), q(1, 2);
  p << 1, 0;
  q << 0, 1;
  const ModelOutputs a = ModelOutputs::make(p, {0}), b = ModelOutputs::make(q, {0});
  c.expect(jsd_mean(a, b) == 0.5, "jsd_mean = 0.5 exactly, got " + std::to_string(jsd_mean(a, b)));
  c.expect(disagreement(a, b) == 1.0, "disagreement of opposite predictions is 1");
  c.expect(disagreement(a, a) == 0.0, "disagreement of identical predictions is 0");
  Matrix many(4, 3), flipped(4, 3);
  many << 0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8, 0.6, 0.3, 0.1;
  flipped << 0.1, 0.8, 0.1, 0.1, 0.1, 0.8, 0.8, 0.1, 0.1, 0.1, 0.1, 0.8;
  const ModelOutputs m = ModelOutputs::make(many, {0, 1, 2, 0});
  const ModelOutputs f = ModelOutputs::make(flipped, {0, 1, 2, 0});
  c.expect(disagreement(m, f) == 1.0, "disagreement 1 on fully flipped predictions");
  c.expect(disagreement(m, m) == 0.0, "disagreement 0 on identical predictions");
}

// 7. Heat-trace estimates against dense spectra.
void imd_spectral(Check& c) {
  std::vector<Graph> graphs = {
      Graph::from_edges(2, {{0, 1}}),
      Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}),
      Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
      Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}),
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}),
      Graph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}}),
      Graph::from_edges(8, {{0, 1}, {2, 3}}),
  };
  for (std::uint64_t s = 0; s < 6; ++s) {
    graphs.push_back(knn_graph(gaussian_matrix(8, 3, hash_combine(s, 20)), 2));
  }
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    std::vector<std::vector<int>> adjacency;
    for (const auto& adj : g.adjacency) adjacency.emplace_back(adj.begin(), adj.end());
    const Vector spectrum = oracle::laplacian_spectrum(adjacency);
    const HeatTraceDescriptor d = heat_trace(g, HeatTraceParams{}, gi);
    double worst = 0;
    for (std::size_t i = 0; i < d.t_grid.size(); ++i) {
      const double exact = oracle::heat_trace(spectrum, d.t_grid[i]);
      worst = std::max(worst, std::abs(d.traces[i] - exact) / exact);
    }
    c.expect(worst <= 0.05, "graph " + std::to_string(gi) + " worst relative error " +
                                std::to_string(worst));
  }
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Matrix r = gaussian_matrix(80, 6, hash_combine(s, 30));
    c.expect(imd(r, r, HeatTraceParams{}, s) == 0.0, "imd(R,R) == 0");
  }
}

int run_command(const std::string& cmd, std::string* out = nullptr) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  char buf[4096];
  std::size_t n = 0;
  std::string text;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) text.append(buf, n);
  const int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 8. Byte-identical CLI runs and failure plumbing.
void determinism(Check& c, const std::string& cli) {
  const auto start = Clock::now();
  fixtures::TempDir dir("acceptance");
  const fs::path suite = dir / "suite";
  c.expect(run_command(cli + " synth --suite all --seed 7 --out " + suite.string() +
                       " 2>/dev/null") == 0,
           "synth succeeds");
  const fs::path config = suite / "run.toml";
  std::vector<std::string> stdout_text(3);
  const std::vector<std::pair<std::string, int>> runs = {{"a", 1}, {"b", 1}, {"c", 8}};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& [name, jobs] = runs[i];
    const int code = run_command(cli + " bench --strict --jobs " + std::to_string(jobs) +
                                     " --config " + config.string() + " --out " +
                                     (dir / name).string() + " 2>/dev/null",
                                 &stdout_text[i]);
    c.expect(code == 0, "bench run " + name + " exits 0, got " + std::to_string(code));
  }
  for (const char* file : {"results.json", "results.csv", "results_table.txt"}) {
    const std::string a = slurp(dir / "a" / file);
    c.expect(!a.empty(), std::string(file) + " written");
    c.expect(a == slurp(dir / "b" / file), std::string(file) + " identical across runs");
    c.expect(a == slurp(dir / "c" / file), std::string(file) + " identical for --jobs 8");
  }
  c.expect(stdout_text[0] == stdout_text[1] && stdout_text[0] == stdout_text[2],
           "stdout identical");

  // Same suite with PWCCA replaced by a measure that always fails.
  MeasureRegistry injected = MeasureRegistry::builtin();
  MeasureDescriptor d = injected.get("pwcca");
  d.fn = [](const Matrix&, const Matrix&, const Hyperparams&) -> double {
    throw MeasureError(FailureKind::kNumerical, "injected failure");
  };
  injected.add(d);
  const RunConfig run = load_run_config(config, injected);
  HarnessOptions options;
  options.registry = &injected;
  const BenchmarkReport report = run_benchmark(run, options);
  const double worst = static_cast<double>(injected.size());
  std::size_t groups = 0;
  for (const RankGroup& g : report.ranks.groups) {
    for (const RankEntry& e : g.entries) {
      if (e.measure != "pwcca") continue;
      ++groups;
      c.expect(e.flagged && e.rank == worst,
               g.test + ": pwcca flagged with rank " + std::to_string(e.rank));
    }
  }
  c.expect(groups == report.ranks.groups.size() && groups > 0, "pwcca ranked in every group");
  for (const CellResult& cell : report.cells) {
    if (cell.measure == "pwcca") {
      c.expect(!cell.ok() && cell.failure->kind == FailureKind::kNumerical,
               cell.test + ": pwcca cell failed:numerical");
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 300, "runtime " + std::to_string(elapsed) + " s < 300 s");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <resim binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"invariance suite", invariance},
      {"oracle equivalence", oracles},
      {"rotation chain anchors", rotation_chain},
      {"group test end to end", group_test},
      {"prediction test end to end", prediction_test},
      {"output difference extremes", output_extremes},
      {"heat trace spectral check", imd_spectral},
      {"determinism and failure plumbing", [&](Check& c) { determinism(c, cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = Clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %zu %s (%.1f s): %s\n", check.ok() ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), seconds_since(start), check.summary().c_str());
    std::fflush(stdout);
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
