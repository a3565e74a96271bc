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

#include "cetx/explainer/records.hpp"

#include "cetx/errors.hpp"
#include "cetx/graph/io.hpp"
#include "cetx/hashing.hpp"

namespace cetx {

using nlohmann::json;

json triple_to_json(const Triple& t) {
  return json{{"head", t.head.str()}, {"rel", static_cast<int>(t.rel)}, {"tail", t.tail.str()}};
}

Triple triple_from_json(const json& j) {
  try {
    Triple t{NodeId::parse(j.at("head").get<std::string>()),
             rel_from_code(j.at("rel").get<int>()),
             NodeId::parse(j.at("tail").get<std::string>())};
    if (!endpoint_kinds_valid(t)) throw ParseError("endpoint kinds invalid for " + t.str());
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("triple: ") + e.what());
  }
}

json explanation_to_json(const Explanation& ex, std::uint64_t config_hash) {
  json ranked = json::array();
  for (const RankedTriple& r : ex.ranked) {
    ranked.push_back(json{{"triple", triple_to_json(r.triple)}, {"importance", r.importance}});
  }
  return json{{"target", triple_to_json(ex.target)},
              {"method", ex.method},
              {"predictor_epoch", ex.predictor_epoch},
              {"seed", ex.seed},
              {"weights", ex.weights},
              {"empty_neighborhood", ex.empty_neighborhood},
              {"config_hash", hash_hex(config_hash)},
              {"ranked", ranked}};
}

Explanation explanation_from_json(const json& j) {
  Explanation ex;
  try {
    ex.target = triple_from_json(j.at("target"));
    ex.method = j.at("method").get<std::string>();
    parse_method(ex.method);
    ex.predictor_epoch = j.at("predictor_epoch").get<std::size_t>();
    ex.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("weights")) ex.weights = j.at("weights").get<std::array<double, kNumRelations>>();
    ex.empty_neighborhood = j.value("empty_neighborhood", false);
    double previous = 0.0;
    bool first = true;
    for (const json& r : j.at("ranked")) {
      RankedTriple rt{triple_from_json(r.at("triple")), r.at("importance").get<double>()};
      if (!first && rt.importance > previous) {
        throw ParseError("ranking is not sorted by importance");
      }
      previous = rt.importance;
      first = false;
      ex.ranked.push_back(rt);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("explanation: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("explanation: ") + e.what());
  }
  return ex;
}

std::string format_explanations(const std::vector<Explanation>& exs, std::uint64_t config_hash) {
  std::string out;
  for (const Explanation& ex : exs) {
    out += explanation_to_json(ex, config_hash).dump();
    out += '\n';
  }
  return out;
}

std::vector<Explanation> parse_explanations(std::string_view text, std::string_view source) {
  std::vector<Explanation> out;
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
      out.push_back(explanation_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Explanation> read_explanations(const std::filesystem::path& path) {
  return parse_explanations(io::read_file(path), path.string());
}

}  // namespace cetx
