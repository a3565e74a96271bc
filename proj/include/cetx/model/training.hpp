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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cetx/graph/hetero_graph.hpp"
#include "cetx/model/rgcn.hpp"

namespace cetx {

enum class InputChoice : std::uint8_t { kAuto, kFree, kProjected };

struct TrainConfig {
  std::size_t epochs = 5000;
  double learning_rate = 0.01;
  std::size_t embedding_dim = 32;
  std::size_t layers = 2;
  std::size_t negative_ratio = 2;
  std::uint64_t seed = 0;
  double l2 = 1e-3;
  // kAuto projects node features when the graph has them.
  InputChoice input = InputChoice::kAuto;
  // Per-epoch probability that a triple is withheld from message passing and
  // scored as a positive instead. 0 scores every triple on the full graph.
  double edge_dropout = 0.5;

  void validate() const;  // throws ConfigError
};

// `ratio` corruptions per positive: head or tail (uniformly) replaced by a
// uniformly drawn node of the same kind, redrawn until the result is absent
// from `known` and is not a similarity self-loop. Throws SamplingError after
// a bounded number of redraws.
std::vector<Triple> sample_negatives(const HeteroGraph& known,
                                     std::span<const Triple> positives, std::size_t ratio,
                                     std::uint64_t seed);
std::vector<Triple> sample_negatives(const HeteroGraph& known,
                                     std::span<const Triple> positives, std::size_t ratio,
                                     std::mt19937_64& rng);

// Mean binary cross-entropy of positives (label 1) and negatives (label 0)
// scored on embeddings computed over `mg`, plus l2 * sum of squared
// parameters. Accumulates the gradient into `grad` when non-null.
double training_loss(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg,
                     std::span<const Triple> positives, std::span<const Triple> negatives,
                     double l2, RgcnModel* grad);

// Mann-Whitney AUC with tied scores counted as one half.
double rank_auc(std::span<const double> positive_scores,
                std::span<const double> negative_scores);

struct TrainLogEntry {
  std::size_t epoch = 0;
  double loss = 0.0;
  std::optional<double> auc;
};

struct TrainHooks {
  // Held-out positives and their negatives for periodic AUC.
  std::vector<Triple> heldout_positives;
  std::vector<Triple> heldout_negatives;
  std::size_t eval_every = 0;  // 0 disables AUC logging
  std::vector<std::size_t> checkpoint_epochs;
  std::function<void(const RgcnModel&)> on_checkpoint;
  std::function<void(const TrainLogEntry&)> on_log;
};

// Full-batch Adam on all triples of g (every relation is a positive),
// fresh negatives every epoch, filtered against g and the held-out positives.
// With edge_dropout > 0 each epoch splits the triples into a message graph
// and a supervision set. Throws NumericError on a non-finite loss.
RgcnModel train(const HeteroGraph& g, const TrainConfig& cfg, const TrainHooks& hooks = {});

double link_auc(const RgcnModel& model, const HeteroGraph& g,
                std::span<const Triple> positives, std::span<const Triple> negatives);

}  // namespace cetx
