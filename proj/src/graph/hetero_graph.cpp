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

#include "cetx/graph/hetero_graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "cetx/errors.hpp"

namespace cetx {

bool HeteroGraph::has_node(NodeId n) const {
  return n.kind == NodeKind::kCellLine ? n.index < cell_count_ : n.index < drug_count_;
}

std::size_t HeteroGraph::node_index(NodeId n) const {
  if (!has_node(n)) throw LookupError("unknown node " + n.str());
  return n.kind == NodeKind::kCellLine ? n.index : cell_count_ + n.index;
}

NodeId HeteroGraph::node_at(std::size_t global) const {
  if (global < cell_count_) return NodeId::cell(static_cast<std::uint32_t>(global));
  return NodeId::drug(static_cast<std::uint32_t>(global - cell_count_));
}

std::span<const AdjEntry> HeteroGraph::out_edges(NodeId head, RelKind rel) const {
  return adjacency_[rel_index(rel)][node_index(head)];
}

std::span<const std::size_t> HeteroGraph::incident(NodeId n) const {
  return incident_[node_index(n)];
}

std::optional<std::size_t> HeteroGraph::find(const Triple& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HeteroGraph::count(RelKind r) const {
  return static_cast<std::size_t>(std::count_if(
      triples_.begin(), triples_.end(), [r](const Triple& t) { return t.rel == r; }));
}

HeteroGraph HeteroGraph::with_triples(std::span<const Triple> triples) const {
  return assemble_graph(triples, cell_count_, drug_count_, cell_features_,
                        drug_features_);
}

HeteroGraph assemble_graph(std::span<const Triple> triples, std::size_t cell_count,
                           std::size_t drug_count, Matrix cell_features,
                           Matrix drug_features) {
  if (!cell_features.empty() && cell_features.rows() != cell_count) {
    throw ValidationError("cell feature rows " + std::to_string(cell_features.rows()) +
                          " != cell count " + std::to_string(cell_count));
  }
  if (!drug_features.empty() && drug_features.rows() != drug_count) {
    throw ValidationError("drug feature rows " + std::to_string(drug_features.rows()) +
                          " != drug count " + std::to_string(drug_count));
  }
  HeteroGraph g;
  g.cell_count_ = cell_count;
  g.drug_count_ = drug_count;
  g.cell_features_ = std::move(cell_features);
  g.drug_features_ = std::move(drug_features);
  const std::size_t n = cell_count + drug_count;
  g.adjacency_.assign(kNumRelations, std::vector<std::vector<AdjEntry>>(n));
  g.incident_.assign(n, {});
  g.triples_.reserve(triples.size());
  g.index_.reserve(triples.size());
  for (const Triple& t : triples) {
    if (!endpoint_kinds_valid(t)) {
      throw ValidationError("endpoint kinds invalid for triple " + t.str());
    }
    if (!g.has_node(t.head) || !g.has_node(t.tail)) {
      throw ValidationError("triple " + t.str() + " references a node out of range");
    }
    if (g.index_.contains(t)) {
      ++g.duplicates_dropped_;
      continue;
    }
    const std::size_t idx = g.triples_.size();
    g.triples_.push_back(t);
    g.index_.emplace(t, idx);
    const std::size_t h = g.node_index(t.head);
    const std::size_t tl = g.node_index(t.tail);
    g.adjacency_[rel_index(t.rel)][h].push_back({t.tail, idx});
    g.incident_[h].push_back(idx);
    if (tl != h) g.incident_[tl].push_back(idx);
  }
  return g;
}

HeteroGraph assemble_graph(std::span<const Triple> response,
                           std::span<const Triple> cell_sim,
                           std::span<const Triple> drug_sim, Matrix cell_features,
                           Matrix drug_features) {
  std::vector<Triple> all;
  all.reserve(response.size() + cell_sim.size() + drug_sim.size());
  all.insert(all.end(), response.begin(), response.end());
  all.insert(all.end(), cell_sim.begin(), cell_sim.end());
  all.insert(all.end(), drug_sim.begin(), drug_sim.end());
  const std::size_t cells = cell_features.rows();
  const std::size_t drugs = drug_features.rows();
  return assemble_graph(all, cells, drugs, std::move(cell_features),
                        std::move(drug_features));
}

bool Neighborhood::contains_node(NodeId n) const {
  return std::binary_search(nodes.begin(), nodes.end(), n);
}

Neighborhood extract_neighborhood(const HeteroGraph& g, const Triple& target,
                                  std::size_t hops) {
  const std::size_t head = g.node_index(target.head);
  const std::size_t tail = g.node_index(target.tail);

  std::vector<std::size_t> dist(g.node_count(), SIZE_MAX);
  std::deque<std::size_t> frontier;
  for (std::size_t s : {head, tail}) {
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    if (dist[u] == hops) continue;
    for (std::size_t ti : g.incident(g.node_at(u))) {
      const Triple& t = g.triple(ti);
      for (NodeId end : {t.head, t.tail}) {
        const std::size_t v = g.node_index(end);
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          frontier.push_back(v);
        }
      }
    }
  }

  Neighborhood n;
  n.target = target;
  n.hops = hops;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (dist[v] != SIZE_MAX) n.nodes.push_back(g.node_at(v));
  }
  std::sort(n.nodes.begin(), n.nodes.end());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (dist[v] == SIZE_MAX) continue;
    for (std::size_t ti : g.incident(g.node_at(v))) {
      const Triple& t = g.triple(ti);
      // visit each triple once, from its head
      if (g.node_index(t.head) != v) continue;
      if (dist[g.node_index(t.tail)] == SIZE_MAX) continue;
      if (t == target) continue;
      n.triple_indices.push_back(ti);
    }
  }
  std::sort(n.triple_indices.begin(), n.triple_indices.end());
  n.triples.reserve(n.triple_indices.size());
  for (std::size_t ti : n.triple_indices) n.triples.push_back(g.triple(ti));
  return n;
}

}  // namespace cetx
