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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cetx/errors.hpp"
#include "cetx/model/checkpoint.hpp"
#include "cetx/model/rgcn.hpp"
#include "cetx/model/training.hpp"
#include "cetx/numerics/finite_diff.hpp"
#include "test_util.hpp"

using namespace cetx;
using cetx::testing::random_features;
using cetx::testing::random_graph;

namespace {

RgcnModel free_model(const HeteroGraph& g, std::vector<std::size_t> dims, std::uint64_t seed) {
  ModelShape shape;
  shape.cell_count = g.cell_count();
  shape.drug_count = g.drug_count();
  shape.dims = std::move(dims);
  return init_model(shape, seed);
}

// Dense reference: explicit normalized adjacency per channel.
Matrix dense_forward(const RgcnModel& m, const HeteroGraph& g, const std::vector<double>& scale) {
  const std::size_t n = g.node_count();
  Matrix h = m.embedding;
  for (std::size_t l = 0; l < m.layers(); ++l) {
    const std::size_t out = m.dims[l + 1];
    Matrix z(n, out);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t o = 0; o < out; ++o)
        for (std::size_t k = 0; k < m.dims[l]; ++k) z(i, o) += h(i, k) * m.self_weights[l](k, o);
    for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
      const bool inverse = ch >= kNumRelations;
      const std::size_t r = ch % kNumRelations;
      const Matrix& w = inverse ? m.inverse_weights[l][r] : m.relation_weights[l][r];
      std::vector<double> indeg(n, 0.0);
      for (const Triple& t : g.triples()) {
        if (rel_index(t.rel) != r) continue;
        indeg[g.node_index(inverse ? t.head : t.tail)] += 1.0;
      }
      for (std::size_t e = 0; e < g.size(); ++e) {
        const Triple& t = g.triple(e);
        if (rel_index(t.rel) != r) continue;
        const std::size_t src = g.node_index(inverse ? t.tail : t.head);
        const std::size_t dst = g.node_index(inverse ? t.head : t.tail);
        const double a = (scale.empty() ? 1.0 : scale[e]) / indeg[dst];
        for (std::size_t o = 0; o < out; ++o)
          for (std::size_t k = 0; k < m.dims[l]; ++k) z(dst, o) += a * h(src, k) * w(k, o);
      }
    }
    if (l + 1 < m.layers())
      for (double& v : z.values()) v = std::max(v, 0.0);
    h = std::move(z);
  }
  return h;
}

void expect_near(const Matrix& a, const Matrix& b, double tol) {
  ASSERT_TRUE(a.same_shape(b));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], tol);
}

}  // namespace

TEST(Rgcn, ForwardMatchesDenseOracle) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const HeteroGraph g = random_graph(5, 4, 0.4, 0.3, seed);
    const RgcnModel m = free_model(g, {6, 5, 4}, seed + 100);
    expect_near(rgcn_forward(m, g), dense_forward(m, g, {}), 1e-12);
    std::vector<double> scale(g.size());
    for (std::size_t e = 0; e < scale.size(); ++e) scale[e] = 0.1 + 0.8 * ((e * 37 % 11) / 10.0);
    expect_near(rgcn_forward(m, g, scale), dense_forward(m, g, scale), 1e-12);
  }
}

TEST(Rgcn, AllOnesScaleIsBitIdentical) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HeteroGraph g = random_graph(6, 5, 0.3, 0.3, seed);
    const RgcnModel m = free_model(g, {8, 8, 8}, seed);
    const std::vector<double> ones(g.size(), 1.0);
    EXPECT_EQ(rgcn_forward(m, g, ones), rgcn_forward(m, g));
  }
}

TEST(Rgcn, AllZerosScaleEqualsEdgelessGraph) {
  const HeteroGraph g = random_graph(6, 5, 0.3, 0.3, 4);
  const RgcnModel m = free_model(g, {8, 8, 8}, 4);
  const std::vector<double> zeros(g.size(), 0.0);
  const HeteroGraph empty = g.with_triples(std::span<const Triple>{});
  EXPECT_EQ(rgcn_forward(m, g, zeros), rgcn_forward(m, empty));
}

TEST(Rgcn, ScaleLengthChecked) {
  const HeteroGraph g = random_graph(4, 4, 0.5, 0.0, 1);
  const RgcnModel m = free_model(g, {4, 4}, 1);
  const std::vector<double> bad(g.size() + 1, 1.0);
  EXPECT_THROW(rgcn_forward(m, g, bad), DimensionError);
}

TEST(Rgcn, ProjectedInputUsesFeatures) {
  const HeteroGraph base = random_graph(4, 3, 0.5, 0.3, 2);
  const HeteroGraph g = assemble_graph(base.triples(), 4, 3, random_features(4, 5, 1),
                                       random_features(3, 2, 2));
  ModelShape shape{4, 3, InputMode::kProjected, 5, 2, {6, 6}};
  const RgcnModel m = init_model(shape, 3);
  const MessageGraph mg = message_graph(g);
  const Matrix h0 = input_states(m, g, mg);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t o = 0; o < 6; ++o) {
      double want = 0.0;
      for (std::size_t p = 0; p < 5; ++p) want += g.cell_features()(i, p) * m.cell_projection(p, o);
      EXPECT_NEAR(h0(i, o), want, 1e-12);
    }
}

TEST(Rgcn, DistMultPermutationInvariant) {
  const HeteroGraph g = random_graph(3, 3, 0.5, 0.0, 6);
  RgcnModel m = free_model(g, {5, 5}, 6);
  const Matrix emb = rgcn_forward(m, g);
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  std::vector<double> h(5), t(5);
  RgcnModel pm = m;
  for (std::size_t k = 0; k < 5; ++k) {
    h[k] = emb(0, perm[k]);
    t[k] = emb(4, perm[k]);
    pm.relation_vectors(1, k) = m.relation_vectors(1, perm[k]);
  }
  EXPECT_NEAR(link_logit(pm, h, RelKind::kSen, t),
              link_logit(m, emb.row(0), RelKind::kSen, emb.row(4)), 1e-14);
}

TEST(Rgcn, SigmoidAndSoftplusStable) {
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_NEAR(softplus(1000.0), 1000.0, 1e-9);
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
}

TEST(Training, LossGradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const HeteroGraph g = random_graph(3, 3, 0.5, 0.4, seed + 20);
    ASSERT_GT(g.size(), 0u);
    RgcnModel m = free_model(g, {4, 3, 3}, seed);
    const MessageGraph mg = message_graph(g);
    const auto& pos = g.triples();
    const auto neg = sample_negatives(g, pos, 1, seed);
    RgcnModel grad = m.zeros_like();
    training_loss(m, g, mg, pos, neg, 1e-3, &grad);
    auto params = m.parameters();
    auto grads = grad.parameters();
    for (std::size_t b = 0; b < params.size(); ++b) {
      if (params[b]->empty()) continue;
      Matrix* target = params[b];
      const Matrix saved = *target;
      auto f = [&](const Matrix& x) {
        *target = x;
        const double v = training_loss(m, g, mg, pos, neg, 1e-3, nullptr);
        *target = saved;
        return v;
      };
      const Matrix fd = finite_diff_grad(f, saved);
      EXPECT_LT(max_relative_error(*grads[b], fd), 1e-4) << "block " << b << " seed " << seed;
    }
  }
}

TEST(Training, NegativesAreUnknownAndDeterministic) {
  const HeteroGraph g = random_graph(6, 6, 0.3, 0.2, 3);
  const auto a = sample_negatives(g, g.triples(), 2, 9);
  const auto b = sample_negatives(g, g.triples(), 2, 9);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2 * g.size());
  for (const Triple& t : a) {
    EXPECT_FALSE(g.contains(t)) << t.str();
    EXPECT_TRUE(endpoint_kinds_valid(t)) << t.str();
  }
}

TEST(Training, SaturatedGraphCannotBeSampled) {
  std::vector<Triple> all;
  for (std::uint32_t c = 0; c < 2; ++c)
    for (std::uint32_t d = 0; d < 2; ++d)
      for (RelKind r : {RelKind::kSen, RelKind::kRes}) all.push_back({NodeId::cell(c), r, NodeId::drug(d)});
  const HeteroGraph g = assemble_graph(all, 2, 2);
  EXPECT_THROW(sample_negatives(g, g.triples(), 1, 0), SamplingError);
}

TEST(Training, RankAucKnownValues) {
  const std::vector<double> pos = {0.9, 0.8}, neg = {0.1, 0.85};
  EXPECT_DOUBLE_EQ(rank_auc(pos, neg), 0.75);
  const std::vector<double> tie_p = {0.5}, tie_n = {0.5};
  EXPECT_DOUBLE_EQ(rank_auc(tie_p, tie_n), 0.5);
}

TEST(Training, DeterministicAndCheckpointsDiffer) {
  const HeteroGraph g = random_graph(6, 5, 0.3, 0.2, 8);
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.embedding_dim = 6;
  cfg.seed = 5;
  cfg.edge_dropout = 0.3;
  std::vector<RgcnModel> snaps;
  TrainHooks hooks;
  hooks.checkpoint_epochs = {20, 30};
  hooks.on_checkpoint = [&](const RgcnModel& m) { snaps.push_back(m); };
  const RgcnModel a = train(g, cfg, hooks);
  const RgcnModel b = train(g, cfg);
  EXPECT_EQ(a, b);
  ASSERT_EQ(snaps.size(), 2u);
  EXPECT_EQ(snaps[0].epoch, 20u);
  EXPECT_NE(snaps[0], snaps[1]);
}

TEST(Training, LossDecreases) {
  const HeteroGraph g = random_graph(6, 5, 0.3, 0.2, 8);
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.embedding_dim = 8;
  std::vector<double> losses;
  TrainHooks hooks;
  hooks.on_log = [&](const TrainLogEntry& e) { losses.push_back(e.loss); };
  train(g, cfg, hooks);
  ASSERT_GE(losses.size(), 2u);
  EXPECT_LT(losses.back(), losses.front());
}

TEST(Training, ConfigValidation) {
  TrainConfig cfg;
  cfg.edge_dropout = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.epochs = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Checkpoint, RoundTripIsExact) {
  const HeteroGraph g = random_graph(4, 3, 0.5, 0.3, 1);
  RgcnModel m = free_model(g, {5, 4, 3}, 77);
  m.epoch = 4000;
  m.config_hash = 0xdeadbeefcafef00dULL;
  EXPECT_EQ(parse_checkpoint(serialize_checkpoint(m)), m);
}

TEST(Checkpoint, ProjectedRoundTrip) {
  ModelShape shape{3, 2, InputMode::kProjected, 4, 3, {5, 5}};
  const RgcnModel m = init_model(shape, 1);
  EXPECT_EQ(parse_checkpoint(serialize_checkpoint(m)), m);
}

TEST(Checkpoint, MalformedInputsRejected) {
  EXPECT_THROW(parse_checkpoint("{"), ParseError);
  EXPECT_THROW(parse_checkpoint("{}"), ParseError);
  const HeteroGraph g = random_graph(3, 3, 0.5, 0.3, 1);
  std::string text = serialize_checkpoint(free_model(g, {4, 4}, 1));
  // Declared dims no longer chain with the stored weights.
  const auto pos = text.find("\"dims\"");
  ASSERT_NE(pos, std::string::npos);
  const auto open = text.find('[', pos);
  const auto close = text.find(']', open);
  text.replace(open, close - open + 1, "[4,5]");
  EXPECT_THROW(parse_checkpoint(text), ParseError);
}
