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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cetx/graph/hetero_graph.hpp"
#include "cetx/graph/types.hpp"
#include "cetx/numerics/matrix.hpp"

namespace cetx {

enum class InputMode : std::uint8_t {
  kFree,       // learned embedding per node
  kProjected,  // node features times a learned per-kind projection
};

// Relational GCN encoder with a DistMult decoder.
//
// Layer l maps node states H_l (n x d_l) to
//   Z_i = H_l[i] W0_l + sum_r sum_{j in N_i^r} (s_e / c_{i,r}) H_l[j] W_{l,r}
// with ReLU on hidden layers and identity on the last one. Every triple
// (j, r, i) contributes to N_i^r and, through a separate inverse relation
// r' with its own weights, to N_j^{r'}. c_{i,r} = |N_i^r| on the unscaled
// graph, and s_e is an optional per-triple scale (1 when absent) shared by
// both directions.
struct RgcnModel {
  std::size_t cell_count = 0;
  std::size_t drug_count = 0;
  InputMode input = InputMode::kFree;
  std::vector<std::size_t> dims;  // d_0 .. d_L

  Matrix embedding;        // kFree: (cells + drugs) x d_0
  Matrix cell_projection;  // kProjected: cell feature dim x d_0
  Matrix drug_projection;  // kProjected: drug feature dim x d_0
  std::vector<std::array<Matrix, kNumRelations>> relation_weights;  // [l][r]: d_l x d_{l+1}
  std::vector<std::array<Matrix, kNumRelations>> inverse_weights;   // [l][r]: d_l x d_{l+1}
  std::vector<Matrix> self_weights;                                 // [l]: d_l x d_{l+1}
  Matrix relation_vectors;  // kNumRelations x d_L

  std::size_t epoch = 0;
  std::uint64_t config_hash = 0;

  std::size_t layers() const { return self_weights.size(); }
  std::size_t node_count() const { return cell_count + drug_count; }
  std::size_t output_dim() const { return dims.empty() ? 0 : dims.back(); }

  // Parameter blocks in a fixed order (used by optimizers and checkpoints).
  std::vector<Matrix*> parameters();
  std::vector<const Matrix*> parameters() const;
  std::size_t parameter_count() const;

  // Same shapes, all zeros. Used as a gradient container.
  RgcnModel zeros_like() const;

  // Throws DimensionError if shapes do not chain.
  void validate() const;

  friend bool operator==(const RgcnModel&, const RgcnModel&) = default;
};

struct ModelShape {
  std::size_t cell_count = 0;
  std::size_t drug_count = 0;
  InputMode input = InputMode::kFree;
  std::size_t cell_feature_dim = 0;
  std::size_t drug_feature_dim = 0;
  std::vector<std::size_t> dims = {32, 32, 32};
};

// Glorot-uniform weights, deterministic under `seed`.
RgcnModel init_model(const ModelShape& shape, std::uint64_t seed);

// Message channels: relation r forward is r, its inverse is kNumRelations + r.
inline constexpr std::size_t kNumChannels = 2 * kNumRelations;

struct MessageEdge {
  std::uint32_t src = 0;     // local node
  std::uint32_t dst = 0;     // local node
  std::uint32_t triple = 0;  // index into the source triple list
  std::uint8_t channel = 0;
};

// Message-passing view of (part of) a graph with local node numbering.
// Triple t yields edges 2t (head -> tail) and 2t + 1 (tail -> head), each
// with the normalizer 1 / c_{dst,channel} counted on the source list.
struct MessageGraph {
  std::vector<std::size_t> nodes;  // local -> global node index (ascending)
  std::vector<MessageEdge> edges;
  std::vector<double> inv_degree;
  std::size_t triple_count = 0;

  std::size_t local_of(std::size_t global) const;  // throws LookupError
};

MessageGraph message_graph(const HeteroGraph& g);
MessageGraph message_graph(const HeteroGraph& g, std::span<const Triple> triples);
MessageGraph message_graph(const HeteroGraph& g, const Neighborhood& n);

struct ForwardCache {
  std::vector<Matrix> states;                                // H_0 .. H_L
  std::vector<std::array<Matrix, kNumChannels>> transformed;  // [l][ch] = H_l W_{l,ch}
};

// Local input states H_0 for the nodes of `mg`.
Matrix input_states(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg);

// Final node states (local numbering). `edge_scale` is empty or has one entry
// per triple of `mg`. `input` optionally overrides H_0.
Matrix forward(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg,
               std::span<const double> edge_scale = {}, ForwardCache* cache = nullptr,
               const Matrix* input = nullptr);

struct BackwardResult {
  std::vector<double> scale_grad;  // per triple, when requested
};

// Backpropagates d(loss)/d(final states). Accumulates parameter gradients
// into `param_grad` when non-null; returns per-triple scale gradients when
// `want_scale_grad` is set.
BackwardResult backward(const RgcnModel& model, const HeteroGraph& g,
                        const MessageGraph& mg, std::span<const double> edge_scale,
                        const ForwardCache& cache, const Matrix& output_grad,
                        RgcnModel* param_grad, bool want_scale_grad);

// Final embeddings for every node of g (global numbering). Throws
// DimensionError if edge_scale is non-empty and not one entry per triple.
Matrix rgcn_forward(const RgcnModel& model, const HeteroGraph& g,
                    std::optional<std::span<const double>> edge_scale = std::nullopt);

// DistMult logit sum_k e_head[k] r[k] e_tail[k].
double link_logit(const RgcnModel& model, std::span<const double> head,
                  RelKind rel, std::span<const double> tail);
double link_probability(const RgcnModel& model, const HeteroGraph& g,
                        const Matrix& embeddings, const Triple& triple);

double sigmoid(double x);
// log(1 + exp(x)) without overflow.
double softplus(double x);

}  // namespace cetx
