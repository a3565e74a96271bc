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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace cetx {

// Stable integer codes are part of the triple-file format.
enum class RelKind : std::uint8_t { kRes = 0, kSen = 1, kDsim = 2, kCsim = 3 };

inline constexpr std::size_t kNumRelations = 4;
inline constexpr std::array<RelKind, kNumRelations> kAllRelations = {
    RelKind::kRes, RelKind::kSen, RelKind::kDsim, RelKind::kCsim};

constexpr std::size_t rel_index(RelKind r) { return static_cast<std::size_t>(r); }
RelKind rel_from_code(int code);
std::string_view rel_name(RelKind r);
constexpr bool is_response(RelKind r) { return r == RelKind::kRes || r == RelKind::kSen; }
constexpr bool is_similarity(RelKind r) { return !is_response(r); }

enum class NodeKind : std::uint8_t { kCellLine = 0, kDrug = 1 };

struct NodeId {
  NodeKind kind = NodeKind::kCellLine;
  std::uint32_t index = 0;

  static NodeId cell(std::uint32_t i) { return {NodeKind::kCellLine, i}; }
  static NodeId drug(std::uint32_t i) { return {NodeKind::kDrug, i}; }

  // "c<index>" / "d<index>"; parse throws ParseError.
  std::string str() const;
  static NodeId parse(std::string_view text);

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct Triple {
  NodeId head;
  RelKind rel = RelKind::kRes;
  NodeId tail;

  std::string str() const;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Kind constraints: Sen/Res go CellLine -> Drug, Dsim Drug -> Drug,
// Csim CellLine -> CellLine, and similarity triples are never self-loops.
bool endpoint_kinds_valid(const Triple& t);

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(t.head.kind) << 62) ^
                      (static_cast<std::uint64_t>(t.head.index) << 32) ^
                      (static_cast<std::uint64_t>(t.rel) << 28) ^
                      (static_cast<std::uint64_t>(t.tail.kind) << 27) ^ t.tail.index;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace cetx
