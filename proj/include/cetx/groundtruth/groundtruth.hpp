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
#include <map>
#include <span>
#include <vector>

#include "cetx/graph/hetero_graph.hpp"

namespace cetx {

enum Situation : std::uint8_t {
  kSit1 = 1 << 0,  // c -rho-> D, D ~ d
  kSit2 = 1 << 1,  // C -rho-> d, C ~ c
  kSit3 = 1 << 2,  // C -rho-> D, C ~ c, D ~ d
};

// Evidence triples for a response target (c, rho, d) drawn from one-hop
// similar neighbours. Each member carries the bitwise OR of the situations
// that produced it.
struct GroundTruthSet {
  Triple target;
  std::map<Triple, std::uint8_t> members;

  bool contains(const Triple& t) const { return members.contains(t); }
  std::size_t size() const { return members.size(); }
  std::vector<Triple> triples() const;
};

// Similarity pairs match either stored direction, and every stored
// similarity triple linking a matched pair is included. Throws ArgumentError
// for similarity targets and LookupError for unknown endpoints.
GroundTruthSet build_ground_truth(const HeteroGraph& g, const Triple& target);

struct HistogramBin {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  std::size_t count = 0;
  double proportion = 0.0;  // percent
};

// Ground-truth sizes binned as [start + i*width, start + (i+1)*width - 1].
// Sizes below `start` are dropped from the histogram. Empty input yields no bins.
std::vector<HistogramBin> gt_distribution(std::span<const std::size_t> sizes,
                                          std::size_t bin_width, std::size_t start = 10);
std::vector<HistogramBin> gt_distribution(const HeteroGraph& g,
                                          std::span<const Triple> targets,
                                          std::size_t bin_width, std::size_t start = 10);

}  // namespace cetx
