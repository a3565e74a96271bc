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

#include "cetx/groundtruth/groundtruth.hpp"

#include <algorithm>
#include <set>

#include "cetx/errors.hpp"

namespace cetx {

std::vector<Triple> GroundTruthSet::triples() const {
  std::vector<Triple> out;
  out.reserve(members.size());
  for (const auto& [t, tags] : members) out.push_back(t);
  return out;
}

namespace {

// Similar neighbours of `n` under `rel` (either direction), with the stored
// triples linking them.
std::map<NodeId, std::vector<Triple>> similar_neighbours(const HeteroGraph& g, NodeId n,
                                                         RelKind rel) {
  std::map<NodeId, std::vector<Triple>> out;
  for (std::size_t ti : g.incident(n)) {
    const Triple& t = g.triple(ti);
    if (t.rel != rel) continue;
    const NodeId other = t.head == n ? t.tail : t.head;
    if (other == n) continue;
    out[other].push_back(t);
  }
  return out;
}

}  // namespace

GroundTruthSet build_ground_truth(const HeteroGraph& g, const Triple& target) {
  if (!is_response(target.rel)) {
    throw ArgumentError("ground truth is only defined for Sen/Res targets, got " + target.str());
  }
  g.node_index(target.head);
  g.node_index(target.tail);
  GroundTruthSet gt;
  gt.target = target;
  const RelKind rho = target.rel;
  const NodeId c = target.head;
  const NodeId d = target.tail;
  const auto similar_drugs = similar_neighbours(g, d, RelKind::kDsim);
  const auto similar_cells = similar_neighbours(g, c, RelKind::kCsim);

  auto add = [&](const Triple& t, Situation s) {
    if (t == target) return;
    gt.members[t] |= s;
  };

  // Sit1: c -rho-> D with D ~ d.
  for (const auto& [drug, links] : similar_drugs) {
    const Triple resp{c, rho, drug};
    if (drug == d || !g.contains(resp)) continue;
    add(resp, kSit1);
    for (const Triple& l : links) add(l, kSit1);
  }
  // Sit2: C -rho-> d with C ~ c.
  for (const auto& [cell, links] : similar_cells) {
    const Triple resp{cell, rho, d};
    if (cell == c || !g.contains(resp)) continue;
    add(resp, kSit2);
    for (const Triple& l : links) add(l, kSit2);
  }
  // Sit3: C -rho-> D with C ~ c and D ~ d.
  for (const auto& [cell, cell_links] : similar_cells) {
    if (cell == c) continue;
    for (const auto& [drug, drug_links] : similar_drugs) {
      const Triple resp{cell, rho, drug};
      if (drug == d || !g.contains(resp)) continue;
      add(resp, kSit3);
      for (const Triple& l : cell_links) add(l, kSit3);
      for (const Triple& l : drug_links) add(l, kSit3);
    }
  }
  return gt;
}

std::vector<HistogramBin> gt_distribution(std::span<const std::size_t> sizes,
                                          std::size_t bin_width, std::size_t start) {
  if (bin_width < 1) throw ArgumentError("bin width must be >= 1");
  std::map<std::size_t, std::size_t> counts;
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    if (s < start) continue;
    ++counts[(s - start) / bin_width];
    ++total;
  }
  std::vector<HistogramBin> bins;
  if (total == 0) return bins;
  const std::size_t last = counts.rbegin()->first;
  for (std::size_t b = 0; b <= last; ++b) {
    HistogramBin bin;
    bin.lo = start + b * bin_width;
    bin.hi = bin.lo + bin_width - 1;
    auto it = counts.find(b);
    bin.count = it == counts.end() ? 0 : it->second;
    bin.proportion = 100.0 * static_cast<double>(bin.count) / static_cast<double>(total);
    bins.push_back(bin);
  }
  return bins;
}

std::vector<HistogramBin> gt_distribution(const HeteroGraph& g,
                                          std::span<const Triple> targets,
                                          std::size_t bin_width, std::size_t start) {
  std::vector<std::size_t> sizes;
  sizes.reserve(targets.size());
  for (const Triple& t : targets) sizes.push_back(build_ground_truth(g, t).size());
  return gt_distribution(sizes, bin_width, start);
}

}  // namespace cetx
