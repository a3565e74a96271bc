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

#include "json.hpp"

#include "cetx/explainer/explainer.hpp"

namespace cetx {

nlohmann::json triple_to_json(const Triple& t);
Triple triple_from_json(const nlohmann::json& j);  // throws ParseError

// One JSON object per line:
// {"target":{...},"method":"CETE","predictor_epoch":5000,"seed":7,
//  "weights":[...],"empty_neighborhood":false,
//  "ranked":[{"triple":{...},"importance":0.93},...]}
nlohmann::json explanation_to_json(const Explanation& ex, std::uint64_t config_hash = 0);
Explanation explanation_from_json(const nlohmann::json& j);

std::string format_explanations(const std::vector<Explanation>& exs,
                                std::uint64_t config_hash = 0);
// Throws ParseError with the line number.
std::vector<Explanation> parse_explanations(std::string_view text,
                                            std::string_view source = "<explanations>");
std::vector<Explanation> read_explanations(const std::filesystem::path& path);

}  // namespace cetx
