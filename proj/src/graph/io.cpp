// Copyright 2026 The cetx Authors.
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

#include "cetx/graph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cetx/errors.hpp"

namespace cetx::io {
namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim_cr(text.substr(pos, end - pos));
    if (!line.empty()) fn(line, line_no);
    pos = end + 1;
  }
}

NodeId parse_node(std::string_view field, std::string_view source, std::size_t line) {
  try {
    return NodeId::parse(field);
  } catch (const ParseError& e) {
    fail(source, line, e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError("malformed number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find(sep, pos);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::vector<Triple> parse_triples(std::string_view text, std::string_view source) {
  std::vector<Triple> out;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto f = split(line, '\t');
    if (f.size() != 3) fail(source, no, "expected 3 tab-separated fields");
    int code = -1;
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), code);
    if (ec != std::errc() || ptr != f[1].data() + f[1].size() || code < 0 || code > 3) {
      fail(source, no, "relation code must be 0-3, got '" + std::string(f[1]) + "'");
    }
    Triple t{parse_node(f[0], source, no), static_cast<RelKind>(code),
             parse_node(f[2], source, no)};
    if (!endpoint_kinds_valid(t)) fail(source, no, "endpoint kinds invalid for " + t.str());
    out.push_back(t);
  });
  return out;
}

std::vector<Triple> read_triples(const std::filesystem::path& path) {
  return parse_triples(read_file(path), path.string());
}

std::string format_triples(const std::vector<Triple>& triples) {
  std::string out;
  for (const Triple& t : triples) {
    out += t.head.str();
    out += '\t';
    out += std::to_string(static_cast<int>(t.rel));
    out += '\t';
    out += t.tail.str();
    out += '\n';
  }
  return out;
}

Matrix parse_features(std::string_view text, NodeKind kind, std::string_view source) {
  std::vector<std::pair<std::uint32_t, std::vector<double>>> rows;
  std::size_t width = 0;
  bool first = true;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto f = split(line, ',');
    const bool is_first = first;
    first = false;
    NodeId id;
    try {
      id = NodeId::parse(f[0]);
    } catch (const ParseError&) {
      if (is_first) return;  // header
      fail(source, no, "malformed node id '" + std::string(f[0]) + "'");
    }
    if (id.kind != kind) fail(source, no, "node " + id.str() + " has the wrong kind");
    if (f.size() < 2) fail(source, no, "no feature columns");
    if (width == 0) width = f.size() - 1;
    if (f.size() - 1 != width) {
      fail(source, no, "expected " + std::to_string(width) + " features, got " +
                           std::to_string(f.size() - 1));
    }
    std::vector<double> values;
    values.reserve(width);
    for (std::size_t i = 1; i < f.size(); ++i) {
      try {
        double v = parse_double(f[i]);
        if (!std::isfinite(v)) fail(source, no, "non-finite feature");
        values.push_back(v);
      } catch (const ParseError& e) {
        fail(source, no, e.what());
      }
    }
    rows.emplace_back(id.index, std::move(values));
  });
  Matrix m(rows.size(), width);
  std::vector<bool> seen(rows.size(), false);
  for (auto& [idx, values] : rows) {
    if (idx >= rows.size() || seen[idx]) {
      throw ParseError(std::string(source) + ": node indices must be dense and unique (" +
                       NodeId{kind, idx}.str() + ")");
    }
    seen[idx] = true;
    std::copy(values.begin(), values.end(), m.row(idx).begin());
  }
  return m;
}

Matrix read_features(const std::filesystem::path& path, NodeKind kind) {
  return parse_features(read_file(path), kind, path.string());
}

std::string format_features(const Matrix& features, NodeKind kind) {
  std::string out;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    out += NodeId{kind, static_cast<std::uint32_t>(i)}.str();
    for (double v : features.row(i)) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<ResponseRecord> parse_responses(std::string_view text, std::string_view source) {
  std::vector<ResponseRecord> out;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto f = split(line, '\t');
    if (f.size() != 4 && f.size() != 3) {
      fail(source, no, "expected cell, drug, ic50[, threshold]");
    }
    ResponseRecord r;
    r.cell = parse_node(f[0], source, no);
    r.drug = parse_node(f[1], source, no);
    if (r.cell.kind != NodeKind::kCellLine || r.drug.kind != NodeKind::kDrug) {
      fail(source, no, "expected a cell id then a drug id");
    }
    try {
      r.ic50 = parse_double(f[2]);
      if (f.size() == 4 && !f[3].empty()) r.threshold = parse_double(f[3]);
    } catch (const ParseError& e) {
      fail(source, no, e.what());
    }
    if (!std::isfinite(r.ic50)) fail(source, no, "non-finite IC50");
    out.push_back(r);
  });
  return out;
}

std::vector<ResponseRecord> read_responses(const std::filesystem::path& path) {
  return parse_responses(read_file(path), path.string());
}

std::string format_responses(const std::vector<ResponseRecord>& records) {
  std::string out;
  for (const ResponseRecord& r : records) {
    out += r.cell.str() + '\t' + r.drug.str() + '\t' + format_double(r.ic50) + '\t';
    if (r.threshold) out += format_double(*r.threshold);
    out += '\n';
  }
  return out;
}

}  // namespace cetx::io
