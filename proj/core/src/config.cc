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

#include "resim/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace resim {
namespace {

using nlohmann::json;

class TomlParser {
 public:
  explicit TomlParser(std::string_view text) : text_(text) {}

  json parse() {
    json root = json::object();
    json* table = &root;
    while (true) {
      skip_blank_lines();
      if (done()) break;
      if (peek() == '[') {
        table = parse_header(root);
      } else {
        parse_key_value(*table);
      }
      end_of_statement();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + message);
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_spaces() {
    while (!done() && (peek() == ' ' || peek() == '\t')) take();
  }
  void skip_comment() {
    if (peek() == '#') {
      while (!done() && peek() != '\n') take();
    }
  }
  // Whitespace, comments and newlines.
  void skip_blank_lines() {
    while (!done()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r' || peek() == '\n') {
        take();
      } else {
        break;
      }
    }
  }
  void end_of_statement() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') take();
    if (done()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "'");
    take();
  }

  static bool bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::vector<std::string> parse_key() {
    std::vector<std::string> parts;
    while (true) {
      skip_spaces();
      if (peek() == '"') {
        parts.push_back(parse_basic_string());
      } else if (peek() == '\'') {
        parts.push_back(parse_literal_string());
      } else {
        std::string part;
        while (!done() && bare_key_char(peek())) part.push_back(take());
        if (part.empty()) fail("expected a key");
        parts.push_back(std::move(part));
      }
      skip_spaces();
      if (peek() != '.') break;
      take();
    }
    return parts;
  }

  // Descends into (creating) the table at `key`, following the last element
  // of arrays of tables.
  json* descend(json* node, const std::string& key) {
    json& child = (*node)[key];
    if (child.is_null()) child = json::object();
    if (child.is_array()) {
      if (child.empty() || !child.back().is_object()) {
        fail("'" + key + "' is not a table");
      }
      return &child.back();
    }
    if (!child.is_object()) fail("'" + key + "' is not a table");
    return &child;
  }

  json* parse_header(json& root) {
    take();  // '['
    const bool array_of_tables = peek() == '[';
    if (array_of_tables) take();
    const std::vector<std::string> key = parse_key();
    if (peek() != ']') fail("expected ']'");
    take();
    if (array_of_tables) {
      if (peek() != ']') fail("expected ']]'");
      take();
    }
    json* node = &root;
    for (std::size_t i = 0; i + 1 < key.size(); ++i) node = descend(node, key[i]);
    if (!array_of_tables) return descend(node, key.back());

    json& list = (*node)[key.back()];
    if (list.is_null()) list = json::array();
    if (!list.is_array()) fail("'" + key.back() + "' is not an array of tables");
    list.push_back(json::object());
    return &list.back();
  }

  void parse_key_value(json& table) {
    const std::vector<std::string> key = parse_key();
    if (peek() != '=') fail("expected '=' after key");
    take();
    skip_spaces();
    json value = parse_value();
    json* node = &table;
    for (std::size_t i = 0; i + 1 < key.size(); ++i) node = descend(node, key[i]);
    if (node->contains(key.back())) fail("duplicate key '" + key.back() + "'");
    (*node)[key.back()] = std::move(value);
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') fail("multi-line strings are not supported");
      return parse_basic_string();
    }
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') fail("inline tables are not supported");
    if (text_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  json parse_array() {
    take();  // '['
    json out = json::array();
    while (true) {
      skip_blank_lines();
      if (peek() == ']') {
        take();
        return out;
      }
      if (done()) fail("unterminated array");
      out.push_back(parse_value());
      skip_blank_lines();
      if (peek() == ',') {
        take();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  std::string parse_basic_string() {
    take();  // '"'
    std::string out;
    while (true) {
      if (done() || peek() == '\n') fail("unterminated string");
      char c = take();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (done()) fail("unterminated escape");
      c = take();
      switch (c) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        default: fail(std::string("unsupported escape \\") + c);
      }
    }
  }

  std::string parse_literal_string() {
    take();  // '\''
    std::string out;
    while (true) {
      if (done() || peek() == '\n') fail("unterminated string");
      const char c = take();
      if (c == '\'') return out;
      out.push_back(c);
    }
  }

  json parse_number() {
    std::string token;
    while (!done()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
          c == '.' || c == '_') {
        take();
        if (c != '_') token.push_back(c);
      } else {
        break;
      }
    }
    if (token.empty()) fail("expected a value");
    std::string_view body = token;
    if (body.front() == '+') body.remove_prefix(1);
    const bool is_float = body.find_first_of(".eE") != std::string_view::npos ||
                          body == "inf" || body == "-inf" || body == "nan";
    if (is_float) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc() || ptr != body.data() + body.size()) {
        fail("malformed number '" + token + "'");
      }
      return v;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      fail("malformed value '" + token + "'");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string where(const TestConfig& t) {
  return t.name.empty() ? std::string("[[test]]") : "test '" + t.name + "'";
}

std::string require_string(const json& table, const char* key,
                           const std::string& context) {
  if (!table.contains(key)) throw ConfigError(context + ": missing '" + key + "'");
  if (!table[key].is_string()) {
    throw ConfigError(context + ": '" + key + "' must be a string");
  }
  return table[key].get<std::string>();
}

std::vector<std::string> string_list(const json& value, const std::string& context) {
  if (!value.is_array()) throw ConfigError(context + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& item : value) {
    if (!item.is_string()) throw ConfigError(context + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::filesystem::path> path_list(const json& value,
                                             const std::filesystem::path& base,
                                             const std::string& context) {
  std::vector<std::filesystem::path> out;
  for (const std::string& p : string_list(value, context)) out.push_back(resolve(base, p));
  return out;
}

// Accepts [[paths...], ...] or a flat [paths...] (one list).
std::vector<std::vector<std::filesystem::path>> nested_paths(
    const json& value, const std::filesystem::path& base, const std::string& context) {
  if (!value.is_array()) throw ConfigError(context + " must be an array");
  std::vector<std::vector<std::filesystem::path>> out;
  if (!value.empty() && value.front().is_string()) {
    out.push_back(path_list(value, base, context));
    return out;
  }
  for (const json& inner : value) out.push_back(path_list(inner, base, context));
  return out;
}

std::uint64_t as_seed(const json& value, const std::string& context) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ConfigError(context + ": seed must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(value.get<std::int64_t>());
}

void check_measures(const std::vector<std::string>& ids,
                    const MeasureRegistry& registry, const std::string& context) {
  for (const std::string& id : ids) {
    if (!registry.contains(id)) {
      throw ConfigError(context + ": unknown measure '" + id + "'");
    }
  }
}

TestConfig parse_test(const json& table, const std::filesystem::path& base,
                      const MeasureRegistry& registry) {
  if (!table.is_object()) throw ConfigError("[[test]] entries must be tables");
  TestConfig t;
  if (table.contains("name")) t.name = require_string(table, "name", "[[test]]");
  const std::string context = where(t);
  t.kind = parse_test_kind(require_string(table, "kind", context));
  if (t.name.empty()) t.name = std::string(to_string(t.kind));

  static const std::set<std::string> known = {
      "kind", "name", "dataset", "architecture", "output_diff", "measures",
      "seed", "groups", "group_names", "representations", "outputs",
      "labels", "layer_order"};
  for (const auto& [key, value] : table.items()) {
    if (!known.contains(key)) throw ConfigError(context + ": unknown key '" + key + "'");
  }

  if (table.contains("dataset")) t.dataset = require_string(table, "dataset", context);
  if (table.contains("architecture")) {
    t.architecture = require_string(table, "architecture", context);
  }
  if (table.contains("measures")) {
    t.measures = string_list(table["measures"], context + ": 'measures'");
    check_measures(t.measures, registry, context);
  }
  if (table.contains("seed")) t.seed = as_seed(table["seed"], context);
  if (table.contains("output_diff")) {
    const std::string diff = require_string(table, "output_diff", context);
    if (diff == "jsd") {
      t.output_diff = OutputDiff::kJsd;
    } else if (diff == "disagreement") {
      t.output_diff = OutputDiff::kDisagreement;
    } else {
      throw ConfigError(context + ": output_diff must be 'jsd' or 'disagreement'");
    }
  }

  switch (t.kind) {
    case TestKind::kGroup: {
      if (!table.contains("groups")) throw ConfigError(context + ": missing 'groups'");
      t.groups = nested_paths(table["groups"], base, context + ": 'groups'");
      if (table.contains("group_names")) {
        t.group_names = string_list(table["group_names"], context + ": 'group_names'");
        if (t.group_names.size() != t.groups.size()) {
          throw ConfigError(context + ": group_names must match groups");
        }
      }
      if (t.groups.size() < 2) throw ConfigError(context + ": needs at least two groups");
      for (const auto& g : t.groups) {
        if (g.size() < 2) {
          throw ConfigError(context + ": every group needs at least two members");
        }
      }
      break;
    }
    case TestKind::kAccuracyCorr:
    case TestKind::kOutputCorr: {
      if (!table.contains("representations") || !table.contains("outputs") ||
          !table.contains("labels")) {
        throw ConfigError(context +
                          ": prediction tests need 'representations', 'outputs' and 'labels'");
      }
      t.representations =
          path_list(table["representations"], base, context + ": 'representations'");
      t.outputs = path_list(table["outputs"], base, context + ": 'outputs'");
      t.labels = resolve(base, require_string(table, "labels", context));
      if (t.representations.size() != t.outputs.size()) {
        throw ConfigError(context + ": representations and outputs must pair up");
      }
      if (t.representations.size() < 3) {
        throw ConfigError(context + ": prediction tests need at least three models");
      }
      break;
    }
    case TestKind::kLayer: {
      if (!table.contains("layer_order")) {
        throw ConfigError(context + ": missing 'layer_order'");
      }
      t.layer_order = nested_paths(table["layer_order"], base, context + ": 'layer_order'");
      if (t.layer_order.empty()) throw ConfigError(context + ": no models listed");
      for (const auto& model : t.layer_order) {
        if (model.size() < 3) {
          throw ConfigError(context + ": every model needs at least three layers");
        }
      }
      break;
    }
  }
  return t;
}

}  // namespace

nlohmann::json parse_toml(std::string_view text) { return TomlParser(text).parse(); }

std::string_view to_string(TestKind kind) {
  switch (kind) {
    case TestKind::kAccuracyCorr: return "accuracy-corr";
    case TestKind::kOutputCorr: return "output-corr";
    case TestKind::kGroup: return "group";
    case TestKind::kLayer: return "layer";
  }
  return "unknown";
}

std::string_view to_string(OutputDiff diff) {
  return diff == OutputDiff::kJsd ? "jsd" : "disagreement";
}

TestKind parse_test_kind(std::string_view text) {
  for (TestKind k : {TestKind::kAccuracyCorr, TestKind::kOutputCorr,
                     TestKind::kGroup, TestKind::kLayer}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("unknown test kind '" + std::string(text) + "'");
}

RunConfig parse_run_config(std::string_view toml_text,
                           const std::filesystem::path& base_dir,
                           const MeasureRegistry& registry) {
  const json doc = parse_toml(toml_text);
  for (const auto& [key, value] : doc.items()) {
    if (key != "run" && key != "test") {
      throw ConfigError("unknown top-level table '" + key + "'");
    }
  }

  RunConfig config;
  if (doc.contains("run")) {
    const json& run = doc["run"];
    if (!run.is_object()) throw ConfigError("[run] must be a table");
    for (const auto& [key, value] : run.items()) {
      if (key == "seed") {
        config.seed = as_seed(value, "[run]");
      } else if (key == "out_dir") {
        config.out_dir = resolve(base_dir, require_string(run, "out_dir", "[run]"));
      } else if (key == "measures") {
        config.measures = string_list(value, "[run]: 'measures'");
        check_measures(config.measures, registry, "[run]");
      } else if (value.is_number()) {
        config.hyperparams[key] = value.get<double>();
      } else {
        throw ConfigError("[run]: unknown key '" + key + "'");
      }
    }
  }
  if (!doc.contains("test")) throw ConfigError("config defines no [[test]] tables");
  if (!doc["test"].is_array()) throw ConfigError("'test' must be an array of tables");
  std::set<std::string> names;
  for (const json& table : doc["test"]) {
    TestConfig t = parse_test(table, base_dir, registry);
    if (!names.insert(t.name).second) {
      throw ConfigError("duplicate test name '" + t.name + "'");
    }
    config.tests.push_back(std::move(t));
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path,
                          const MeasureRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_run_config(os.str(), path.parent_path(), registry);
}

}  // namespace resim
