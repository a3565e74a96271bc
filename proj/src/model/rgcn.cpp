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

#include "cetx/model/rgcn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cetx/errors.hpp"
#include "cetx/numerics/kernels.hpp"

namespace cetx {

std::vector<Matrix*> RgcnModel::parameters() {
  std::vector<Matrix*> out;
  if (input == InputMode::kFree) {
    out.push_back(&embedding);
  } else {
    out.push_back(&cell_projection);
    out.push_back(&drug_projection);
  }
  for (std::size_t l = 0; l < layers(); ++l) {
    for (Matrix& w : relation_weights[l]) out.push_back(&w);
    for (Matrix& w : inverse_weights[l]) out.push_back(&w);
    out.push_back(&self_weights[l]);
  }
  out.push_back(&relation_vectors);
  return out;
}

std::vector<const Matrix*> RgcnModel::parameters() const {
  auto mut = const_cast<RgcnModel*>(this)->parameters();
  return {mut.begin(), mut.end()};
}

std::size_t RgcnModel::parameter_count() const {
  std::size_t n = 0;
  for (const Matrix* m : parameters()) n += m->size();
  return n;
}

RgcnModel RgcnModel::zeros_like() const {
  RgcnModel z = *this;
  for (Matrix* m : z.parameters()) m->fill(0.0);
  return z;
}

void RgcnModel::validate() const {
  auto expect = [](const Matrix& m, std::size_t r, std::size_t c, const std::string& name) {
    if (m.rows() != r || m.cols() != c) {
      throw DimensionError(name + " has shape " + m.shape_string() + ", expected (" +
                           std::to_string(r) + " x " + std::to_string(c) + ")");
    }
  };
  if (dims.size() < 2) throw DimensionError("model needs at least one layer");
  if (relation_weights.size() != dims.size() - 1 || inverse_weights.size() != dims.size() - 1 ||
      self_weights.size() != dims.size() - 1) {
    throw DimensionError("layer count does not match dims");
  }
  if (input == InputMode::kFree) {
    expect(embedding, node_count(), dims[0], "embedding");
  } else {
    if (cell_projection.cols() != dims[0] || drug_projection.cols() != dims[0]) {
      throw DimensionError("projection width does not match d_0");
    }
  }
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    for (std::size_t r = 0; r < kNumRelations; ++r) {
      expect(relation_weights[l][r], dims[l], dims[l + 1],
             "relation_weights[" + std::to_string(l) + "][" + std::to_string(r) + "]");
      expect(inverse_weights[l][r], dims[l], dims[l + 1],
             "inverse_weights[" + std::to_string(l) + "][" + std::to_string(r) + "]");
    }
    expect(self_weights[l], dims[l], dims[l + 1], "self_weights[" + std::to_string(l) + "]");
  }
  expect(relation_vectors, kNumRelations, dims.back(), "relation_vectors");
}

RgcnModel init_model(const ModelShape& shape, std::uint64_t seed) {
  if (shape.dims.size() < 2) throw ArgumentError("model needs at least one layer");
  std::mt19937_64 rng(seed);
  auto glorot = [&rng](std::size_t rows, std::size_t cols) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Matrix m(rows, cols);
    for (double& v : m.values()) v = dist(rng);
    return m;
  };
  RgcnModel m;
  m.cell_count = shape.cell_count;
  m.drug_count = shape.drug_count;
  m.input = shape.input;
  m.dims = shape.dims;
  if (shape.input == InputMode::kFree) {
    m.embedding = glorot(m.node_count(), shape.dims[0]);
  } else {
    if (shape.cell_feature_dim == 0 || shape.drug_feature_dim == 0) {
      throw ArgumentError("projected input needs cell and drug features");
    }
    m.cell_projection = glorot(shape.cell_feature_dim, shape.dims[0]);
    m.drug_projection = glorot(shape.drug_feature_dim, shape.dims[0]);
  }
  for (std::size_t l = 0; l + 1 < shape.dims.size(); ++l) {
    std::array<Matrix, kNumRelations> ws;
    for (Matrix& w : ws) w = glorot(shape.dims[l], shape.dims[l + 1]);
    m.relation_weights.push_back(std::move(ws));
    std::array<Matrix, kNumRelations> inv;
    for (Matrix& w : inv) w = glorot(shape.dims[l], shape.dims[l + 1]);
    m.inverse_weights.push_back(std::move(inv));
    m.self_weights.push_back(glorot(shape.dims[l], shape.dims[l + 1]));
  }
  m.relation_vectors = glorot(kNumRelations, shape.dims.back());
  return m;
}

std::size_t MessageGraph::local_of(std::size_t global) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), global);
  if (it == nodes.end() || *it != global) {
    throw LookupError("node " + std::to_string(global) + " not in message graph");
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

namespace {

MessageGraph build_message_graph(const HeteroGraph& g, std::vector<std::size_t> nodes,
                                 std::span<const Triple> triples) {
  MessageGraph mg;
  mg.nodes = std::move(nodes);
  std::vector<std::uint32_t> local(g.node_count(), UINT32_MAX);
  for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
    local[mg.nodes[i]] = static_cast<std::uint32_t>(i);
  }
  mg.triple_count = triples.size();
  mg.edges.reserve(2 * triples.size());
  std::vector<std::array<std::uint32_t, kNumChannels>> degree(
      mg.nodes.size(), std::array<std::uint32_t, kNumChannels>{});
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    const std::uint32_t h = local[g.node_index(t.head)];
    const std::uint32_t d = local[g.node_index(t.tail)];
    if (h == UINT32_MAX || d == UINT32_MAX) {
      throw LookupError("triple " + t.str() + " leaves the message graph");
    }
    const auto r = static_cast<std::uint8_t>(rel_index(t.rel));
    const auto idx = static_cast<std::uint32_t>(i);
    mg.edges.push_back({h, d, idx, r});
    mg.edges.push_back({d, h, idx, static_cast<std::uint8_t>(kNumRelations + r)});
    ++degree[d][r];
    ++degree[h][kNumRelations + r];
  }
  mg.inv_degree.reserve(mg.edges.size());
  for (const MessageEdge& e : mg.edges) {
    mg.inv_degree.push_back(1.0 / static_cast<double>(degree[e.dst][e.channel]));
  }
  return mg;
}

const Matrix& channel_weight(const RgcnModel& m, std::size_t l, std::size_t c) {
  return c < kNumRelations ? m.relation_weights[l][c] : m.inverse_weights[l][c - kNumRelations];
}

Matrix& channel_weight(RgcnModel& m, std::size_t l, std::size_t c) {
  return c < kNumRelations ? m.relation_weights[l][c] : m.inverse_weights[l][c - kNumRelations];
}

}  // namespace

MessageGraph message_graph(const HeteroGraph& g) {
  return message_graph(g, std::span<const Triple>(g.triples()));
}

MessageGraph message_graph(const HeteroGraph& g, std::span<const Triple> triples) {
  std::vector<std::size_t> nodes(g.node_count());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
  return build_message_graph(g, std::move(nodes), triples);
}

MessageGraph message_graph(const HeteroGraph& g, const Neighborhood& n) {
  std::vector<std::size_t> nodes;
  nodes.reserve(n.nodes.size());
  for (NodeId id : n.nodes) nodes.push_back(g.node_index(id));
  return build_message_graph(g, std::move(nodes), n.triples);
}

Matrix input_states(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg) {
  const std::size_t d0 = model.dims.front();
  Matrix h(mg.nodes.size(), d0);
  if (model.input == InputMode::kFree) {
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
      auto src = model.embedding.row(mg.nodes[i]);
      std::copy(src.begin(), src.end(), h.row(i).begin());
    }
    return h;
  }
  const auto& k = simd::active();
  for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
    const std::size_t global = mg.nodes[i];
    const bool is_cell = global < g.cell_count();
    const Matrix& features = is_cell ? g.cell_features() : g.drug_features();
    const Matrix& proj = is_cell ? model.cell_projection : model.drug_projection;
    const std::size_t row = is_cell ? global : global - g.cell_count();
    if (features.cols() != proj.rows()) {
      throw DimensionError("feature width " + std::to_string(features.cols()) +
                           " does not match projection " + proj.shape_string());
    }
    for (std::size_t p = 0; p < features.cols(); ++p) {
      const double x = features(row, p);
      if (x != 0.0) k.axpy(x, proj.row(p).data(), h.row(i).data(), d0);
    }
  }
  return h;
}

Matrix forward(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg,
               std::span<const double> edge_scale, ForwardCache* cache,
               const Matrix* input) {
  if (!edge_scale.empty() && edge_scale.size() != mg.triple_count) {
    throw DimensionError("edge scale has " + std::to_string(edge_scale.size()) +
                         " entries for " + std::to_string(mg.triple_count) + " triples");
  }
  const auto& k = simd::active();
  const std::size_t layers = model.layers();
  Matrix h = input != nullptr ? *input : input_states(model, g, mg);
  if (cache != nullptr) {
    cache->states.clear();
    cache->transformed.clear();
    cache->states.reserve(layers + 1);
    cache->states.push_back(h);
  }
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t out_dim = model.dims[l + 1];
    Matrix z(h.rows(), out_dim);
    matmul_acc(h, model.self_weights[l], z);
    std::array<Matrix, kNumChannels> t;
    for (std::size_t c = 0; c < kNumChannels; ++c) {
      t[c] = Matrix(h.rows(), out_dim);
      matmul_acc(h, channel_weight(model, l, c), t[c]);
    }
    for (std::size_t e = 0; e < mg.edges.size(); ++e) {
      const MessageEdge& edge = mg.edges[e];
      const double coef = edge_scale.empty() ? mg.inv_degree[e]
                                             : edge_scale[edge.triple] * mg.inv_degree[e];
      k.axpy(coef, t[edge.channel].row(edge.src).data(), z.row(edge.dst).data(), out_dim);
    }
    if (l + 1 < layers) {
      for (double& v : z.values()) v = v > 0.0 ? v : 0.0;
    }
    if (cache != nullptr) {
      cache->transformed.push_back(std::move(t));
      cache->states.push_back(z);
    }
    h = std::move(z);
  }
  return h;
}

BackwardResult backward(const RgcnModel& model, const HeteroGraph& g,
                        const MessageGraph& mg, std::span<const double> edge_scale,
                        const ForwardCache& cache, const Matrix& output_grad,
                        RgcnModel* param_grad, bool want_scale_grad) {
  const auto& k = simd::active();
  const std::size_t layers = model.layers();
  BackwardResult result;
  if (want_scale_grad) result.scale_grad.assign(mg.triple_count, 0.0);
  const bool need_input_grad = param_grad != nullptr;

  Matrix grad = output_grad;
  for (std::size_t li = layers; li-- > 0;) {
    const Matrix& h_in = cache.states[li];
    const Matrix& h_out = cache.states[li + 1];
    const std::size_t out_dim = model.dims[li + 1];
    const std::size_t in_dim = model.dims[li];
    if (li + 1 < layers) {
      auto gv = grad.values();
      auto hv = h_out.values();
      for (std::size_t i = 0; i < gv.size(); ++i) {
        if (!(hv[i] > 0.0)) gv[i] = 0.0;
      }
    }
    const Matrix& dz = grad;
    const bool need_dh = li > 0 || need_input_grad;

    std::array<Matrix, kNumChannels> dt;
    for (Matrix& m : dt) m = Matrix(h_in.rows(), out_dim);
    for (std::size_t e = 0; e < mg.edges.size(); ++e) {
      const MessageEdge& edge = mg.edges[e];
      const std::size_t c = edge.channel;
      if (want_scale_grad) {
        result.scale_grad[edge.triple] +=
            mg.inv_degree[e] * k.dot(dz.row(edge.dst).data(),
                                     cache.transformed[li][c].row(edge.src).data(), out_dim);
      }
      if (param_grad != nullptr || need_dh) {
        const double coef = edge_scale.empty() ? mg.inv_degree[e]
                                               : edge_scale[edge.triple] * mg.inv_degree[e];
        k.axpy(coef, dz.row(edge.dst).data(), dt[c].row(edge.src).data(), out_dim);
      }
    }
    if (param_grad != nullptr) {
      matmul_tn_acc(h_in, dz, param_grad->self_weights[li]);
      for (std::size_t c = 0; c < kNumChannels; ++c) {
        matmul_tn_acc(h_in, dt[c], channel_weight(*param_grad, li, c));
      }
    }
    if (!need_dh) break;
    Matrix dh(h_in.rows(), in_dim);
    matmul_nt_acc(dz, model.self_weights[li], dh);
    for (std::size_t c = 0; c < kNumChannels; ++c) {
      matmul_nt_acc(dt[c], channel_weight(model, li, c), dh);
    }
    grad = std::move(dh);
  }

  if (param_grad != nullptr) {
    const std::size_t d0 = model.dims.front();
    if (model.input == InputMode::kFree) {
      for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        k.axpy(1.0, grad.row(i).data(), param_grad->embedding.row(mg.nodes[i]).data(), d0);
      }
    } else {
      for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        const std::size_t global = mg.nodes[i];
        const bool is_cell = global < g.cell_count();
        const Matrix& features = is_cell ? g.cell_features() : g.drug_features();
        Matrix& proj = is_cell ? param_grad->cell_projection : param_grad->drug_projection;
        const std::size_t row = is_cell ? global : global - g.cell_count();
        for (std::size_t p = 0; p < features.cols(); ++p) {
          const double x = features(row, p);
          if (x != 0.0) k.axpy(x, grad.row(i).data(), proj.row(p).data(), d0);
        }
      }
    }
  }
  return result;
}

Matrix rgcn_forward(const RgcnModel& model, const HeteroGraph& g,
                    std::optional<std::span<const double>> edge_scale) {
  if (edge_scale && edge_scale->size() != g.size()) {
    throw DimensionError("edge scale has " + std::to_string(edge_scale->size()) +
                         " entries for " + std::to_string(g.size()) + " triples");
  }
  const MessageGraph mg = message_graph(g);
  return forward(model, g, mg, edge_scale.value_or(std::span<const double>{}));
}

double link_logit(const RgcnModel& model, std::span<const double> head, RelKind rel,
                  std::span<const double> tail) {
  return simd::dot3(head, model.relation_vectors.row(rel_index(rel)), tail);
}

double link_probability(const RgcnModel& model, const HeteroGraph& g,
                        const Matrix& embeddings, const Triple& triple) {
  const std::size_t h = g.node_index(triple.head);
  const std::size_t t = g.node_index(triple.tail);
  if (h >= embeddings.rows() || t >= embeddings.rows()) {
    throw LookupError("triple " + triple.str() + " outside the embedding table");
  }
  return sigmoid(link_logit(model, embeddings.row(h), triple.rel, embeddings.row(t)));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace cetx
