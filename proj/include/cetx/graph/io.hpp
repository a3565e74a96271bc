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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cetx/graph/construction.hpp"
#include "cetx/graph/types.hpp"
#include "cetx/numerics/matrix.hpp"

namespace cetx::io {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);
// Parses a full field as a double; throws ParseError.
double parse_double(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string read_file(const std::filesystem::path& path);
// Writes atomically-enough for our purposes: truncate then write.
void write_file(const std::filesystem::path& path, std::string_view contents);

// head<TAB>code<TAB>tail per line.
std::vector<Triple> parse_triples(std::string_view text, std::string_view source = "<triples>");
std::vector<Triple> read_triples(const std::filesystem::path& path);
std::string format_triples(const std::vector<Triple>& triples);

// CSV: node id, then features. Rows must cover indices 0..n-1 of `kind`
// exactly once. A first line whose id field does not parse is a header.
Matrix parse_features(std::string_view text, NodeKind kind,
                      std::string_view source = "<features>");
Matrix read_features(const std::filesystem::path& path, NodeKind kind);
std::string format_features(const Matrix& features, NodeKind kind);

// cell<TAB>drug<TAB>ic50<TAB>threshold per line.
std::vector<ResponseRecord> parse_responses(std::string_view text,
                                            std::string_view source = "<responses>");
std::vector<ResponseRecord> read_responses(const std::filesystem::path& path);
std::string format_responses(const std::vector<ResponseRecord>& records);

}  // namespace cetx::io
