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

#include "resim/io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace resim {
namespace {

static_assert(std::endian::native == std::endian::little,
              "NPY reader assumes a little-endian host");

constexpr std::string_view kNpyMagic = "\x93NUMPY";

struct NpyArray {
  std::vector<Index> shape;
  std::vector<double> values;  // Row-major.
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return std::move(os).str();
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Returns the text following `'key':` in a NPY header dictionary.
std::string_view header_value(std::string_view header, std::string_view key) {
  std::string quoted = "'" + std::string(key) + "'";
  auto pos = header.find(quoted);
  if (pos == std::string_view::npos) {
    throw FormatError("NPY header lacks key " + quoted);
  }
  pos = header.find(':', pos + quoted.size());
  if (pos == std::string_view::npos) throw FormatError("malformed NPY header");
  return trim(header.substr(pos + 1));
}

std::vector<Index> parse_shape(std::string_view text) {
  if (text.empty() || text.front() != '(') {
    throw FormatError("malformed NPY shape");
  }
  auto close = text.find(')');
  if (close == std::string_view::npos) throw FormatError("malformed NPY shape");
  std::string_view body = text.substr(1, close - 1);
  std::vector<Index> shape;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    if (!item.empty()) {
      long long dim = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), dim);
      if (ec != std::errc() || ptr != item.data() + item.size() || dim < 0) {
        throw FormatError("malformed NPY shape entry");
      }
      shape.push_back(static_cast<Index>(dim));
    }
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return shape;
}

template <typename T>
void decode(std::string_view payload, std::size_t count,
            std::vector<double>& out) {
  if (payload.size() < count * sizeof(T)) {
    throw FormatError("NPY payload is truncated");
  }
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    T v;
    std::memcpy(&v, payload.data() + i * sizeof(T), sizeof(T));
    out[i] = static_cast<double>(v);
  }
}

NpyArray parse_npy_array(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, 6) != kNpyMagic) {
    throw FormatError("not an NPY file (bad magic)");
  }
  const auto major = static_cast<unsigned char>(bytes[6]);
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = static_cast<unsigned char>(bytes[8]) |
                 (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw FormatError("truncated NPY header");
    header_len = 0;
    for (int i = 0; i < 4; ++i) {
      header_len |= static_cast<std::size_t>(static_cast<unsigned char>(bytes[8 + i]))
                    << (8 * i);
    }
    offset = 12;
  } else {
    throw FormatError("unsupported NPY version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) throw FormatError("truncated NPY header");
  std::string_view header = bytes.substr(offset, header_len);

  std::string_view descr = header_value(header, "descr");
  std::string_view fortran = header_value(header, "fortran_order");
  std::vector<Index> shape = parse_shape(header_value(header, "shape"));

  bool fortran_order = false;
  if (fortran.starts_with("True")) {
    fortran_order = true;
  } else if (!fortran.starts_with("False")) {
    throw FormatError("malformed fortran_order in NPY header");
  }

  std::size_t count = 1;
  for (Index d : shape) count *= static_cast<std::size_t>(d);
  std::string_view payload = bytes.substr(offset + header_len);

  NpyArray array;
  array.shape = shape;
  std::vector<double> raw;
  if (descr.starts_with("'<f8'")) {
    decode<double>(payload, count, raw);
  } else if (descr.starts_with("'<f4'")) {
    decode<float>(payload, count, raw);
  } else if (descr.starts_with("'<i8'")) {
    decode<std::int64_t>(payload, count, raw);
  } else if (descr.starts_with("'<i4'")) {
    decode<std::int32_t>(payload, count, raw);
  } else {
    throw FormatError("unsupported NPY dtype " + std::string(descr.substr(0, 6)));
  }

  if (fortran_order && shape.size() == 2) {
    const Index rows = shape[0], cols = shape[1];
    array.values.resize(raw.size());
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) {
        array.values[r * cols + c] = raw[c * rows + r];
      }
    }
  } else {
    array.values = std::move(raw);
  }
  return array;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

}  // namespace

MatrixFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return (ext == ".csv" || ext == ".txt") ? MatrixFormat::kCsv
                                          : MatrixFormat::kNpy;
}

Matrix parse_npy(std::string_view bytes) {
  NpyArray array = parse_npy_array(bytes);
  if (array.shape.size() != 2) {
    throw FormatError("expected a 2-D tensor, got " +
                      std::to_string(array.shape.size()) + " dimensions");
  }
  Matrix m(array.shape[0], array.shape[1]);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = array.values[r * m.cols() + c];
    }
  }
  require_finite(m, "NPY tensor");
  return m;
}

Matrix read_npy(const std::filesystem::path& path) {
  return parse_npy(read_file(path));
}

std::string serialize_npy(const Matrix& m) {
  std::ostringstream dict;
  dict << "{'descr': '<f8', 'fortran_order': False, 'shape': (" << m.rows()
       << ", " << m.cols() << "), }";
  std::string header = dict.str();
  // Magic (6) + version (2) + length (2) + header + '\n' is 64-byte aligned.
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::string out(kNpyMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(header.size() & 0xff));
  out.push_back(static_cast<char>((header.size() >> 8) & 0xff));
  out += header;
  const std::size_t base = out.size();
  out.resize(base + sizeof(double) * static_cast<std::size_t>(m.size()));
  char* dst = out.data() + base;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      std::memcpy(dst, &v, sizeof(double));
      dst += sizeof(double);
    }
  }
  return out;
}

void write_npy(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  const std::string bytes = serialize_npy(m);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed for " + path.string());
}

Matrix parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size() && numeric; ++i) {
      numeric = parse_double(fields[i], row[i]);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw FormatError("non-numeric CSV field on line " + std::to_string(line_no));
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("ragged CSV row on line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("CSV contains no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  require_finite(m, "CSV matrix");
  return m;
}

Matrix read_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path));
}

Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::kCsv ? read_csv(path) : read_npy(path);
}

Matrix read_matrix(const std::filesystem::path& path) {
  return read_matrix(path, format_for_path(path));
}

Representation load_representation(const std::filesystem::path& path,
                                   MatrixFormat format) {
  return Representation::make(read_matrix(path, format),
                              path.stem().string());
}

Representation load_representation(const std::filesystem::path& path) {
  return load_representation(path, format_for_path(path));
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  std::vector<double> values;
  if (format_for_path(path) == MatrixFormat::kCsv) {
    Matrix m = read_csv(path);
    if (m.cols() != 1) throw FormatError("label CSV must have one column");
    values.assign(m.data(), m.data() + m.size());
  } else {
    NpyArray array = parse_npy_array(read_file(path));
    const bool vector_shape =
        array.shape.size() == 1 ||
        (array.shape.size() == 2 && array.shape[1] == 1);
    if (!vector_shape) throw FormatError("labels must be a 1-D array");
    values = std::move(array.values);
  }
  std::vector<int> labels;
  labels.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v) || v != std::floor(v) || v < 0) {
      throw FormatError("labels must be nonnegative integers");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

void write_labels(const std::filesystem::path& path,
                  const std::vector<int>& labels) {
  std::ostringstream dict;
  dict << "{'descr': '<i8', 'fortran_order': False, 'shape': (" << labels.size()
       << ",), }";
  std::string header = dict.str();
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(kNpyMagic.data(), static_cast<std::streamsize>(kNpyMagic.size()));
  const char version_and_len[4] = {
      '\x01', '\x00', static_cast<char>(header.size() & 0xff),
      static_cast<char>((header.size() >> 8) & 0xff)};
  out.write(version_and_len, 4);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (int label : labels) {
    const std::int64_t v = label;
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace resim
