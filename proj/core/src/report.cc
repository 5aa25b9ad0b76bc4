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

#include "resim/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace resim {
namespace {

using nlohmann::json;

std::string format_number(double v, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

FailureKind parse_failure_kind(const std::string& text) {
  for (FailureKind k : {FailureKind::kNumerical, FailureKind::kUndefinedInput,
                        FailureKind::kDimensionMismatch}) {
    if (text == to_string(k)) return k;
  }
  throw FormatError("unknown failure kind '" + text + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("cannot write " + path.string());
}

std::map<std::tuple<std::string, std::string, std::string, std::string>, const RankEntry*>
rank_lookup(const BenchmarkReport& report) {
  std::map<std::tuple<std::string, std::string, std::string, std::string>, const RankEntry*>
      out;
  for (const RankGroup& g : report.ranks.groups) {
    for (const RankEntry& e : g.entries) {
      out[{g.test, g.dataset, g.architecture, e.measure}] = &e;
    }
  }
  return out;
}

}  // namespace

std::string cell_status(const CellResult& cell) {
  if (cell.ok()) return "ok";
  return "failed:" + std::string(to_string(cell.failure->kind));
}

json report_to_json(const BenchmarkReport& report) {
  json cells = json::array();
  for (const CellResult& c : report.cells) {
    json cell = {{"test", c.test},
                 {"kind", to_string(c.kind)},
                 {"dataset", c.dataset},
                 {"architecture", c.architecture},
                 {"measure", c.measure},
                 {"status", cell_status(c)},
                 {"scores", c.scores},
                 {"pairs", c.pairs},
                 {"failed_pairs", c.failed_pairs}};
    if (c.failure) cell["message"] = c.failure->message;
    cells.push_back(std::move(cell));
  }
  json groups = json::array();
  for (const RankGroup& g : report.ranks.groups) {
    json entries = json::array();
    for (const RankEntry& e : g.entries) {
      entries.push_back({{"measure", e.measure}, {"rank", e.rank}, {"flagged", e.flagged}});
    }
    groups.push_back({{"test", g.test},
                      {"dataset", g.dataset},
                      {"architecture", g.architecture},
                      {"entries", std::move(entries)}});
  }
  json aggregates = json::array();
  for (const MeasureAggregate& a : report.ranks.aggregates) {
    aggregates.push_back({{"measure", a.measure},
                          {"ranks", a.ranks},
                          {"median_rank", a.median_rank},
                          {"failed_cells", a.failed_cells}});
  }
  return {{"cells", std::move(cells)},
          {"ranks", std::move(groups)},
          {"aggregates", std::move(aggregates)}};
}

std::string report_json_text(const BenchmarkReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

BenchmarkReport report_from_json(const json& doc) {
  BenchmarkReport report;
  try {
    if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array()) {
      throw FormatError("report has no cells array");
    }
    for (const json& j : doc["cells"]) {
      CellResult c;
      c.test = j.at("test").get<std::string>();
      c.kind = parse_test_kind(j.at("kind").get<std::string>());
      c.dataset = j.at("dataset").get<std::string>();
      c.architecture = j.at("architecture").get<std::string>();
      c.measure = j.at("measure").get<std::string>();
      c.scores = j.at("scores").get<std::map<std::string, double>>();
      c.pairs = j.at("pairs").get<std::size_t>();
      c.failed_pairs = j.at("failed_pairs").get<std::size_t>();
      const std::string status = j.at("status").get<std::string>();
      if (status != "ok") {
        if (!status.starts_with("failed:")) {
          throw FormatError("unknown cell status '" + status + "'");
        }
        c.failure = Failure{parse_failure_kind(status.substr(7)),
                            j.value("message", std::string())};
      }
      report.cells.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
  // Ranks are a pure function of the cells.
  report.ranks = aggregate_ranks(report.cells);
  return report;
}

BenchmarkReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return report_from_json(doc);
}

std::string report_csv(const BenchmarkReport& report) {
  const auto ranks = rank_lookup(report);
  std::ostringstream os;
  os << "test,kind,dataset,architecture,measure,status,spearman,auprc,conformity,rank\n";
  for (const CellResult& c : report.cells) {
    os << csv_field(c.test) << ',' << to_string(c.kind) << ',' << csv_field(c.dataset)
       << ',' << csv_field(c.architecture) << ',' << c.measure << ',' << cell_status(c);
    for (const char* key : {"spearman", "auprc", "conformity"}) {
      os << ',';
      auto it = c.scores.find(key);
      if (it != c.scores.end()) os << format_number(it->second);
    }
    os << ',';
    auto it = ranks.find({c.test, c.dataset, c.architecture, c.measure});
    if (it != ranks.end()) os << format_number(it->second->rank);
    os << '\n';
  }
  return os.str();
}

std::string report_table(const BenchmarkReport& report) {
  const auto& groups = report.ranks.groups;
  std::map<std::tuple<std::string, std::string, std::string, std::string>, const CellResult*>
      cell_of;
  for (const CellResult& c : report.cells) {
    cell_of[{c.test, c.dataset, c.architecture, c.measure}] = &c;
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"measure"}, sub = {""};
  for (const RankGroup& g : groups) {
    header.push_back(g.test);
    TestKind kind = TestKind::kGroup;
    for (const CellResult& c : report.cells) {
      if (c.test == g.test) {
        kind = c.kind;
        break;
      }
    }
    sub.push_back(primary_score(kind));
  }
  header.push_back("median rank");
  sub.push_back("");
  rows.push_back(header);
  rows.push_back(sub);
  for (const MeasureAggregate& a : report.ranks.aggregates) {
    std::vector<std::string> row = {a.measure};
    for (const RankGroup& g : groups) {
      auto it = cell_of.find({g.test, g.dataset, g.architecture, a.measure});
      if (it == cell_of.end()) {
        row.push_back("");
        continue;
      }
      const CellResult& c = *it->second;
      auto s = c.scores.find(primary_score(c.kind));
      row.push_back(c.ok() && s != c.scores.end() ? format_number(s->second, "%.2f") : "n/a");
    }
    row.push_back(format_number(a.median_rank, "%.1f"));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      const std::string& s = rows[r][i];
      const std::string pad(width[i] - s.size(), ' ');
      line += i == 0 ? s + pad : "  " + pad + s;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
    if (r == 1) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      os << std::string(total, '-') << '\n';
    }
  }
  return os.str();
}

void write_report(const BenchmarkReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw FormatError("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "results.json", report_json_text(report));
  write_file(out_dir / "results.csv", report_csv(report));
  write_file(out_dir / "results_table.txt", report_table(report));
}

}  // namespace resim
