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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cetx/cli/bench.hpp"
#include "cetx/explainer/explainer.hpp"
#include "cetx/graph/construction.hpp"
#include "cetx/model/training.hpp"

namespace cetx {

// One configurable key: "section.key", its default text and a short help line.
struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
};

// The full table of recognised keys, in canonical (sorted) order.
const std::vector<ConfigKey>& config_keys();

// Run configuration read from a flat INI-style file:
//
//   # comment
//   [train]
//   epochs = 5000
//
// Every key has a default; unknown sections or keys are errors. Values are
// kept as text so the canonical form round-trips exactly; the typed views
// below parse and validate them.
class RunConfig {
 public:
  RunConfig();  // all defaults

  static RunConfig parse(std::string_view text, std::string_view source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  // Throws ConfigError for unknown keys. Does not validate the value.
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;

  // "section.key=value" lines in key order; hash is FNV-1a over this text.
  std::string canonical() const;
  std::uint64_t hash() const;
  // The same content as an INI file that parse() reads back unchanged.
  std::string to_ini() const;

  // Typed views. Each throws ConfigError naming the offending key.
  std::filesystem::path output_dir() const;
  std::filesystem::path input_path(const std::string& key, std::string_view fallback) const;
  std::uint64_t seed() const;
  SimilarityMode cell_similarity() const;
  SimilarityMode drug_similarity() const;
  // Per-drug thresholds from the response file, or one global cut.
  std::optional<double> global_ic50_threshold() const;
  TrainConfig train() const;
  std::vector<std::size_t> checkpoint_epochs() const;
  std::size_t eval_every() const;
  std::size_t folds() const;
  std::size_t fold() const;
  bool all_folds() const;
  ExplainConfig explain() const;
  std::size_t eval_k() const;
  std::vector<std::string> eval_methods() const;
  std::size_t stability_epoch() const;
  std::size_t gt_bin_width() const;
  std::size_t gt_bin_start() const;
  BenchConfig bench() const;

  // Parses every typed view once; throws ConfigError on the first problem.
  void validate() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace cetx
