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

#include "resim/suites.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "resim/io.h"
#include "resim/random.h"
#include "resim/synthgen.h"
#include "resim/types.h"

namespace resim {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kChainModels = 3;
constexpr int kPredictionModels = 10;
constexpr double kDivergenceStep = 0.15;

struct Part {
  json manifest;
  std::string tests;  // [[test]] tables
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string string_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? ", " : "") + quoted(items[i]);
  }
  return out + "]";
}

// Writes `m` under dir/prefix/name.npy; returns the path relative to dir.
std::string save(const fs::path& dir, const std::string& prefix, const std::string& name,
                 const Matrix& m) {
  const std::string rel = prefix.empty() ? name + ".npy" : prefix + "/" + name + ".npy";
  fs::create_directories((dir / rel).parent_path());
  write_npy(dir / rel, m);
  return rel;
}

Part groups_part(std::uint64_t seed, const fs::path& dir, const std::string& prefix) {
  GroupedConfig config;
  config.seed = seed;
  const std::vector<Representation> reps = gen_grouped(config);

  std::vector<std::vector<std::string>> groups(config.groups);
  std::vector<std::string> names;
  for (int g = 0; g < config.groups; ++g) names.push_back("g" + std::to_string(g));
  json models = json::array();
  for (const Representation& r : reps) {
    const std::string file = save(dir, prefix, r.model_id, r.data);
    groups[std::stoi(r.group->substr(1))].push_back(file);
    models.push_back({{"id", r.model_id}, {"file", file}, {"group", *r.group}});
  }

  std::ostringstream t;
  t << "[[test]]\nname = \"groups\"\nkind = \"group\"\n"
    << "group_names = " << string_array(names) << "\ngroups = [\n";
  for (const auto& g : groups) t << "  " << string_array(g) << ",\n";
  t << "]\n\n";

  json manifest = {{"suite", "groups"},
                   {"seed", seed},
                   {"instances", config.instances},
                   {"features", config.features},
                   {"within_noise", config.within_noise},
                   {"between_map", "random-linear"},
                   {"models", std::move(models)},
                   {"groups", groups}};
  return {std::move(manifest), t.str()};
}

Part layers_part(std::uint64_t seed, const fs::path& dir, const std::string& prefix) {
  json models = json::array();
  std::vector<std::vector<std::string>> order;
  RotationChainConfig config;
  for (int m = 0; m < kChainModels; ++m) {
    config.seed = hash_combine(seed, static_cast<std::uint64_t>(m));
    const std::string model = "chain" + std::to_string(m);
    std::vector<std::string> files;
    for (const Representation& r : gen_rotation_chain(config)) {
      files.push_back(save(dir, prefix, model + "_l" + std::to_string(r.layer), r.data));
    }
    models.push_back({{"id", model}, {"seed", config.seed}, {"layers", files}});
    order.push_back(std::move(files));
  }

  std::ostringstream t;
  t << "[[test]]\nname = \"layers\"\nkind = \"layer\"\nlayer_order = [\n";
  for (const auto& files : order) t << "  " << string_array(files) << ",\n";
  t << "]\n\n";

  json manifest = {{"suite", "layers"},
                   {"seed", seed},
                   {"instances", config.instances},
                   {"features", config.features},
                   {"angle", config.angle},
                   {"models", std::move(models)},
                   {"layer_order", order}};
  return {std::move(manifest), t.str()};
}

Part prediction_part(std::uint64_t seed, const fs::path& dir, const std::string& prefix) {
  OutputsConfig config;
  config.seed = seed;
  config.divergence = divergence_grid(kPredictionModels, kDivergenceStep);
  const OutputFamily family = gen_outputs(config);

  const std::string labels = prefix.empty() ? "labels.npy" : prefix + "/labels.npy";
  fs::create_directories((dir / labels).parent_path());
  write_labels(dir / labels, family.labels);

  std::vector<std::string> reps, outs;
  json models = json::array();
  for (std::size_t m = 0; m < family.representations.size(); ++m) {
    const Representation& r = family.representations[m];
    reps.push_back(save(dir, prefix, r.model_id, r.data));
    outs.push_back(save(dir, prefix, r.model_id + "_probs", family.outputs[m].probs));
    models.push_back({{"id", r.model_id},
                      {"file", reps.back()},
                      {"outputs", outs.back()},
                      {"divergence", config.divergence[m]}});
  }

  std::ostringstream t;
  const std::string inputs = "representations = " + string_array(reps) +
                             "\noutputs = " + string_array(outs) +
                             "\nlabels = " + quoted(labels) + "\n\n";
  t << "[[test]]\nname = \"prediction-accuracy\"\nkind = \"accuracy-corr\"\n" << inputs;
  t << "[[test]]\nname = \"prediction-jsd\"\nkind = \"output-corr\"\n"
    << "output_diff = \"jsd\"\n" << inputs;
  t << "[[test]]\nname = \"prediction-disagreement\"\nkind = \"output-corr\"\n"
    << "output_diff = \"disagreement\"\n" << inputs;

  json manifest = {{"suite", "prediction"},
                   {"seed", seed},
                   {"instances", config.instances},
                   {"features", config.features},
                   {"classes", config.classes},
                   {"labels", labels},
                   {"models", std::move(models)}};
  return {std::move(manifest), t.str()};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw FormatError("cannot write " + path.string());
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "groups") return Suite::kGroups;
  if (name == "layers") return Suite::kLayers;
  if (name == "prediction") return Suite::kPrediction;
  if (name == "all") return Suite::kAll;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

json write_suite(Suite suite, std::uint64_t seed, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<Part> parts;
  const bool all = suite == Suite::kAll;
  if (all || suite == Suite::kGroups) {
    parts.push_back(groups_part(seed, out_dir, all ? "groups" : ""));
  }
  if (all || suite == Suite::kLayers) {
    parts.push_back(layers_part(seed, out_dir, all ? "layers" : ""));
  }
  if (all || suite == Suite::kPrediction) {
    parts.push_back(prediction_part(seed, out_dir, all ? "prediction" : ""));
  }

  std::ostringstream toml;
  toml << "[run]\nseed = " << seed << "\nout_dir = \"results\"\n\n";
  json manifest;
  if (all) {
    manifest = {{"suite", "all"}, {"seed", seed}, {"parts", json::array()}};
  }
  for (Part& p : parts) {
    toml << p.tests;
    if (all) {
      manifest["parts"].push_back(std::move(p.manifest));
    } else {
      manifest = std::move(p.manifest);
    }
  }
  write_text(out_dir / "run.toml", toml.str());
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace resim
