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

#include "cetx/groundtruth/records.hpp"

#include "cetx/errors.hpp"
#include "cetx/explainer/records.hpp"
#include "cetx/graph/io.hpp"
#include "cetx/hashing.hpp"

namespace cetx {

using nlohmann::json;

json ground_truth_to_json(const GroundTruthSet& gt, std::uint64_t config_hash) {
  json members = json::array();
  for (const auto& [t, tags] : gt.members) {
    json sits = json::array();
    for (int s = 0; s < 3; ++s) {
      if (tags & (1 << s)) sits.push_back(s + 1);
    }
    members.push_back(json{{"triple", triple_to_json(t)}, {"situations", sits}});
  }
  return json{{"target", triple_to_json(gt.target)},
              {"config_hash", hash_hex(config_hash)},
              {"members", members}};
}

GroundTruthSet ground_truth_from_json(const json& j) {
  GroundTruthSet gt;
  try {
    gt.target = triple_from_json(j.at("target"));
    for (const json& m : j.at("members")) {
      std::uint8_t tags = 0;
      for (const json& s : m.at("situations")) {
        const int v = s.get<int>();
        if (v < 1 || v > 3) throw ParseError("situation tag must be 1-3");
        tags |= static_cast<std::uint8_t>(1 << (v - 1));
      }
      if (tags == 0) throw ParseError("ground-truth member without a situation tag");
      gt.members[triple_from_json(m.at("triple"))] = tags;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("ground truth: ") + e.what());
  }
  return gt;
}

std::string format_ground_truth(const std::vector<GroundTruthSet>& sets,
                                std::uint64_t config_hash) {
  std::string out;
  for (const GroundTruthSet& gt : sets) {
    out += ground_truth_to_json(gt, config_hash).dump();
    out += '\n';
  }
  return out;
}

std::vector<GroundTruthSet> parse_ground_truth(std::string_view text, std::string_view source) {
  std::vector<GroundTruthSet> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    try {
      out.push_back(ground_truth_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<GroundTruthSet> read_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(io::read_file(path), path.string());
}

std::string format_histogram(const std::vector<HistogramBin>& bins) {
  std::string out = "bin_lo,bin_hi,count,proportion\n";
  for (const HistogramBin& b : bins) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", b.proportion);
    out += std::to_string(b.lo) + ',' + std::to_string(b.hi) + ',' + std::to_string(b.count) +
           ',' + buf + '\n';
  }
  return out;
}

}  // namespace cetx
