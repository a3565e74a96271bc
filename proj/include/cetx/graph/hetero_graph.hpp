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

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cetx/graph/types.hpp"
#include "cetx/numerics/matrix.hpp"

namespace cetx {

struct AdjEntry {
  NodeId tail;
  std::size_t triple;
};

// Directed multi-relational triple store over cell-line and drug nodes.
// Immutable once assembled. Nodes are addressed globally as
// [0, cell_count) for cell lines followed by [cell_count, node_count) for drugs.
class HeteroGraph {
 public:
  HeteroGraph() = default;

  std::size_t cell_count() const { return cell_count_; }
  std::size_t drug_count() const { return drug_count_; }
  std::size_t node_count() const { return cell_count_ + drug_count_; }
  std::size_t size() const { return triples_.size(); }

  const std::vector<Triple>& triples() const { return triples_; }
  const Triple& triple(std::size_t i) const { return triples_[i]; }
  const Matrix& cell_features() const { return cell_features_; }
  const Matrix& drug_features() const { return drug_features_; }

  bool has_node(NodeId n) const;
  std::size_t node_index(NodeId n) const;  // throws LookupError
  NodeId node_at(std::size_t global) const;

  std::span<const AdjEntry> out_edges(NodeId head, RelKind rel) const;
  // Indices of triples touching `n` as head or tail, ascending.
  std::span<const std::size_t> incident(NodeId n) const;

  bool contains(const Triple& t) const { return index_.contains(t); }
  std::optional<std::size_t> find(const Triple& t) const;

  std::size_t duplicates_dropped() const { return duplicates_dropped_; }
  std::size_t count(RelKind r) const;

  // Same nodes and features, restricted to the given triples (in the given
  // order). Throws ValidationError on bad triples.
  HeteroGraph with_triples(std::span<const Triple> triples) const;

 private:
  friend HeteroGraph assemble_graph(std::span<const Triple>, std::size_t, std::size_t,
                                    Matrix, Matrix);

  std::size_t cell_count_ = 0;
  std::size_t drug_count_ = 0;
  std::vector<Triple> triples_;
  Matrix cell_features_;
  Matrix drug_features_;
  // [rel][global head] -> out entries in insertion order
  std::vector<std::vector<std::vector<AdjEntry>>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
  std::unordered_map<Triple, std::size_t, TripleHash> index_;
  std::size_t duplicates_dropped_ = 0;
};

// Builds a deduplicated store from response and similarity triples. Node counts
// come from the feature row counts. Duplicates are dropped silently (the count
// is kept); endpoint-kind violations throw ValidationError naming the triple.
HeteroGraph assemble_graph(std::span<const Triple> response,
                           std::span<const Triple> cell_sim,
                           std::span<const Triple> drug_sim, Matrix cell_features,
                           Matrix drug_features);

// Featureless form for synthetic graphs and tests. If feature matrices are
// given their row counts must equal the node counts.
HeteroGraph assemble_graph(std::span<const Triple> triples, std::size_t cell_count,
                           std::size_t drug_count, Matrix cell_features = {},
                           Matrix drug_features = {});

struct Neighborhood {
  Triple target;
  std::size_t hops = 0;
  std::vector<std::size_t> triple_indices;  // ascending, into the parent graph
  std::vector<Triple> triples;
  std::vector<NodeId> nodes;  // sorted

  bool contains_node(NodeId n) const;
};

// Nodes within k undirected hops of either target endpoint, and every parent
// triple with both endpoints among them except the target itself.
Neighborhood extract_neighborhood(const HeteroGraph& g, const Triple& target,
                                  std::size_t hops);

}  // namespace cetx
