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

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cetx/graph/types.hpp"
#include "cetx/numerics/matrix.hpp"

namespace cetx {

struct SimilarityThreshold {
  double cosine;  // in [-1, 1]
};
struct SimilarityQuantile {
  double fraction;  // in (0, 1)
};
using SimilarityMode = std::variant<SimilarityThreshold, SimilarityQuantile>;

struct SimilarityResult {
  std::vector<Triple> triples;
  std::vector<std::size_t> excluded_rows;  // zero-norm rows
  double threshold = 0.0;                  // effective cosine cut
};

// Cosine-similarity triples among the rows of `features`, emitted in both
// directions for every selected unordered pair. Threshold mode keeps pairs
// with cosine >= t. Quantile mode keeps the round(f * pairs) most similar
// unordered pairs (ties broken by pair order). Zero-norm rows are skipped
// with a warning.
SimilarityResult build_similarity_triples(const Matrix& features, NodeKind kind,
                                          const SimilarityMode& mode);

struct ResponseRecord {
  NodeId cell;
  NodeId drug;
  double ic50 = 0.0;
  std::optional<double> threshold;  // as read from the response file
};

struct PerDrugThresholds {
  std::map<NodeId, double> by_drug;
};
struct GlobalThreshold {
  double value;
};
using ThresholdSource = std::variant<PerDrugThresholds, GlobalThreshold>;

// Per-drug thresholds carried by the records themselves. Conflicting values
// for one drug throw ConfigError.
PerDrugThresholds thresholds_from_records(std::span<const ResponseRecord> records);

// ic50 < threshold -> Sen, otherwise Res. Missing thresholds throw ConfigError
// naming the drug; non-finite ic50 throws ValidationError.
std::vector<Triple> binarize_responses(std::span<const ResponseRecord> records,
                                       const ThresholdSource& source);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace cetx
