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

#include "cetx/graph/types.hpp"

#include <charconv>

#include "cetx/errors.hpp"

namespace cetx {

RelKind rel_from_code(int code) {
  if (code < 0 || code > 3) {
    throw ParseError("relation code " + std::to_string(code) + " outside 0-3");
  }
  return static_cast<RelKind>(code);
}

std::string_view rel_name(RelKind r) {
  switch (r) {
    case RelKind::kRes:
      return "Res";
    case RelKind::kSen:
      return "Sen";
    case RelKind::kDsim:
      return "Dsim";
    case RelKind::kCsim:
      return "Csim";
  }
  return "?";
}

std::string NodeId::str() const {
  return (kind == NodeKind::kCellLine ? "c" : "d") + std::to_string(index);
}

NodeId NodeId::parse(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'c' && text[0] != 'd')) {
    throw ParseError("malformed node id '" + std::string(text) + "'");
  }
  std::uint32_t idx = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, idx);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("malformed node id '" + std::string(text) + "'");
  }
  return {text[0] == 'c' ? NodeKind::kCellLine : NodeKind::kDrug, idx};
}

std::string Triple::str() const {
  return "(" + head.str() + ", " + std::string(rel_name(rel)) + ", " + tail.str() + ")";
}

bool endpoint_kinds_valid(const Triple& t) {
  switch (t.rel) {
    case RelKind::kRes:
    case RelKind::kSen:
      return t.head.kind == NodeKind::kCellLine && t.tail.kind == NodeKind::kDrug;
    case RelKind::kDsim:
      return t.head.kind == NodeKind::kDrug && t.tail.kind == NodeKind::kDrug &&
             t.head != t.tail;
    case RelKind::kCsim:
      return t.head.kind == NodeKind::kCellLine && t.tail.kind == NodeKind::kCellLine &&
             t.head != t.tail;
  }
  return false;
}

}  // namespace cetx
