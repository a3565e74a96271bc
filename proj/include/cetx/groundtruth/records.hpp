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

#include "cetx/groundtruth/groundtruth.hpp"

namespace cetx {

// {"target":{...},"members":[{"triple":{...},"situations":[1,3]},...]}
nlohmann::json ground_truth_to_json(const GroundTruthSet& gt, std::uint64_t config_hash = 0);
GroundTruthSet ground_truth_from_json(const nlohmann::json& j);

std::string format_ground_truth(const std::vector<GroundTruthSet>& sets,
                                std::uint64_t config_hash = 0);
std::vector<GroundTruthSet> parse_ground_truth(std::string_view text,
                                               std::string_view source = "<gt>");
std::vector<GroundTruthSet> read_ground_truth(const std::filesystem::path& path);

// bin_lo,bin_hi,count,proportion
std::string format_histogram(const std::vector<HistogramBin>& bins);

}  // namespace cetx
