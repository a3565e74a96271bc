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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cetx/explainer/explainer.hpp"
#include "cetx/groundtruth/groundtruth.hpp"

namespace cetx {

// |top-k ∩ GT| / min(k, |ranking|). nullopt for an empty ranking.
std::optional<double> precision_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                     std::size_t k);

// TP@k / (TP@k + FN@N) where FN@N = |GT \ top-n|. nullopt when GT is empty.
// Throws ArgumentError when k > n.
std::optional<double> recall_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                  std::size_t k, std::size_t n);
std::optional<double> recall_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                  std::size_t k);  // n = ranking length

double f1_at_k(double precision, double recall);

// Mean over targets of |top-k(a) ∩ top-k(b)|. Runs pair up by target; a
// mismatch throws PairingError listing the unmatched targets.
double stability(std::span<const Explanation> runs_a, std::span<const Explanation> runs_b,
                 std::size_t k);

// Pooled RelKind proportions across all top-k lists, indexed by RelKind code.
// nullopt when every ranking is empty.
std::optional<std::array<double, kNumRelations>> edge_type_distribution(
    std::span<const Explanation> explanations, std::size_t k);

struct TargetMetrics {
  Triple target;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::size_t gt_size = 0;
  std::size_t ranking_size = 0;
};

struct MetricsReport {
  std::string method;
  std::size_t k = 10;
  std::vector<TargetMetrics> per_target;
  std::optional<double> mean_precision;
  std::optional<double> mean_recall;
  std::optional<double> mean_f1;
  std::optional<double> stability;
  std::optional<std::array<double, kNumRelations>> edge_types;
  std::size_t target_count = 0;
  std::size_t empty_rankings = 0;
  std::size_t empty_ground_truth = 0;
};

// Explanations and GT sets pair up by target (PairingError otherwise).
MetricsReport evaluate(std::span<const Explanation> explanations,
                       std::span<const GroundTruthSet> ground_truth, std::size_t k);

}  // namespace cetx
