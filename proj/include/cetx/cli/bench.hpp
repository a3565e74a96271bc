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
#include <vector>

#include "cetx/graph/construction.hpp"
#include "cetx/graph/hetero_graph.hpp"
#include "cetx/groundtruth/groundtruth.hpp"
#include "cetx/numerics/matrix.hpp"

namespace cetx {

// Synthetic drug-response graph with planted explanation motifs.
//
// Nodes of each kind are split into clusters, each with one hub. Similarity
// edges form a star: the hub is similar to every member, members are not
// similar to each other. Features realize this under any cosine cut between
// the member-member and hub-member values (about 0.86 and 0.93). Each
// planted target (c, rho, d) gets its own (cell cluster, drug cluster) block,
// in which only the edges of one situation are present:
//   situation 1: c -rho-> D for every other member D of d's cluster
//   situation 2: C -rho-> d for every other member C of c's cluster
//   situation 3: C -rho-> D for the other members of both clusters
// d is its cluster hub in situations 1 and 3, c in situations 2 and 3.
// The target link itself is never stored. Pairs outside planted blocks get a
// random Sen edge with probability `noise_sen` and a random Res edge with
// probability `noise_res`.
enum class TargetRelation : std::uint8_t { kSen, kRes, kMixed };

struct BenchConfig {
  std::uint64_t seed = 7;
  std::size_t cells = 60;
  std::size_t drugs = 40;
  std::size_t cluster_size = 5;
  std::size_t targets = 30;
  // Per-pair probabilities of a random Sen / Res edge outside planted blocks.
  double noise_sen = 0.005;
  double noise_res = 0.005;
  double feature_noise = 0.005;
  // Relation of the planted targets and their motif response edges.
  TargetRelation target_relation = TargetRelation::kSen;

  void validate() const;  // throws ConfigError
};

struct BenchData {
  Matrix cell_features;
  Matrix drug_features;
  std::vector<ResponseRecord> responses;  // per-drug thresholds attached
  std::vector<Triple> targets;            // planting order
  std::vector<GroundTruthSet> answer_key;  // parallel to targets
  HeteroGraph graph;                       // the graph the data is meant to build
};

// Throws ConfigError when the generated features do not realize the planted
// stars under `similarity` (e.g. a cut that is too strict for the noise).
BenchData generate_bench(const BenchConfig& cfg, const SimilarityMode& cell_similarity,
                         const SimilarityMode& drug_similarity);

}  // namespace cetx
