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

#include <cmath>
#include <set>

#include "cetx/errors.hpp"
#include "cetx/explainer/explainer.hpp"
#include "cetx/explainer/records.hpp"
#include "cetx/model/rgcn.hpp"
#include "cetx/numerics/finite_diff.hpp"
#include "test_util.hpp"

using namespace cetx;
using cetx::testing::random_graph;

namespace {

RgcnModel model_for(const HeteroGraph& g, std::size_t dim, std::uint64_t seed) {
  ModelShape shape;
  shape.cell_count = g.cell_count();
  shape.drug_count = g.drug_count();
  shape.dims = {dim, dim, dim};
  return init_model(shape, seed);
}

Triple target_in(const HeteroGraph& g) {
  for (const Triple& t : g.triples())
    if (is_response(t.rel)) return t;
  return {NodeId::cell(0), RelKind::kSen, NodeId::drug(0)};
}

}  // namespace

TEST(Explainer, PenaltyAndEntropy) {
  EXPECT_DOUBLE_EQ(penalty(3.0, 0.5, 0.25), 1.5 + 2.25);
  EXPECT_NEAR(binary_entropy(0.5), std::log(2.0), 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
}

TEST(Explainer, LossGradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HeteroGraph g = random_graph(4, 4, 0.35, 0.25, seed + 50);
    const Triple target = target_in(g);
    const RgcnModel m = model_for(g, 6, seed);
    ExplainConfig cfg;
    cfg.beta = 0.05;
    const Neighborhood n = extract_neighborhood(g, target, 2);
    if (n.triples.empty()) continue;
    const MaskObjective obj(m, g, n, cfg);
    Matrix latent(1, n.triples.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : latent.values()) v = gauss(rng);
    const LossAndGrad lg = obj.evaluate(latent.values());
    const Matrix analytic(1, lg.grad.size(), lg.grad);
    const Matrix fd = finite_diff_grad(
        [&](const Matrix& x) { return obj.evaluate(x.values()).loss; }, latent);
    EXPECT_LT(max_relative_error(analytic, fd), 1e-4) << "seed " << seed;
  }
}

TEST(Explainer, FreeFunctionAgreesWithObjective) {
  const HeteroGraph g = random_graph(4, 4, 0.4, 0.3, 3);
  const Triple target = target_in(g);
  const RgcnModel m = model_for(g, 5, 3);
  const ExplainConfig cfg;
  const Neighborhood n = extract_neighborhood(g, target, 2);
  const EdgeMask mask(std::vector<double>(n.triples.size(), 0.3));
  const LossAndGrad a = explanation_loss(m, g, n, mask, cfg);
  const LossAndGrad b = MaskObjective(m, g, n, cfg).evaluate(mask.latent());
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.grad, b.grad);
}

TEST(Explainer, RankTieBreakIsLowerIndex) {
  const std::vector<Triple> t = {
      {NodeId::cell(0), RelKind::kSen, NodeId::drug(0)},
      {NodeId::cell(1), RelKind::kSen, NodeId::drug(0)},
      {NodeId::cell(2), RelKind::kSen, NodeId::drug(0)},
  };
  const std::vector<double> imp = {0.5, 0.9, 0.5};
  const auto r = rank_by_importance(t, imp, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].triple, t[1]);
  EXPECT_EQ(r[1].triple, t[0]);
}

TEST(Explainer, CeteContract) {
  const HeteroGraph g = random_graph(6, 6, 0.3, 0.3, 9);
  const Triple target = target_in(g);
  const RgcnModel m = model_for(g, 6, 9);
  ExplainConfig cfg;
  cfg.iterations = 50;
  const Explanation a = explain_cet(m, g, target, cfg);
  const Explanation b = explain_cet(m, g, target, cfg);
  EXPECT_EQ(a.method, "CETE");
  EXPECT_EQ(a.weights, (std::array<double, 4>{0.1, 0.4, 0.4, 0.1}));
  ASSERT_LE(a.ranked.size(), 10u);
  ASSERT_EQ(a.ranked.size(), b.ranked.size());
  const Neighborhood n = extract_neighborhood(g, target, 2);
  const std::set<Triple> members(n.triples.begin(), n.triples.end());
  for (std::size_t i = 0; i < a.ranked.size(); ++i) {
    EXPECT_EQ(a.ranked[i].triple, b.ranked[i].triple);
    EXPECT_EQ(a.ranked[i].importance, b.ranked[i].importance);
    EXPECT_TRUE(members.contains(a.ranked[i].triple));
    EXPECT_GT(a.ranked[i].importance, 0.0);
    EXPECT_LT(a.ranked[i].importance, 1.0);
    if (i > 0) EXPECT_GE(a.ranked[i - 1].importance, a.ranked[i].importance);
  }
}

TEST(Explainer, SingleTripleNeighborhoodIsWholeRanking) {
  const std::vector<Triple> t = {{NodeId::cell(0), RelKind::kSen, NodeId::drug(0)},
                                 {NodeId::cell(0), RelKind::kRes, NodeId::drug(1)}};
  const HeteroGraph g = assemble_graph(t, 1, 2);
  const RgcnModel m = model_for(g, 4, 1);
  const Triple target{NodeId::cell(0), RelKind::kSen, NodeId::drug(1)};
  for (Method method : {Method::kCete, Method::kGnne, Method::kExpn}) {
    const Explanation ex = explain(method, m, g, target, ExplainConfig{});
    EXPECT_EQ(ex.ranked.size(), 2u);
  }
  ExplainConfig one_hop;
  one_hop.hops = 1;
  const Explanation ex = explain_cet(m, g, {NodeId::cell(0), RelKind::kSen, NodeId::drug(0)}, one_hop);
  ASSERT_EQ(ex.ranked.size(), 1u);
  EXPECT_EQ(ex.ranked[0].triple, t[1]);
}

TEST(Explainer, EmptyNeighborhoodFlagged) {
  const std::vector<Triple> t = {{NodeId::cell(1), RelKind::kSen, NodeId::drug(1)}};
  const HeteroGraph g = assemble_graph(t, 2, 2);
  const RgcnModel m = model_for(g, 4, 1);
  const Triple target{NodeId::cell(0), RelKind::kSen, NodeId::drug(0)};
  for (Method method : {Method::kCete, Method::kGnne, Method::kExpn}) {
    const Explanation ex = explain(method, m, g, target, ExplainConfig{});
    EXPECT_TRUE(ex.empty_neighborhood);
    EXPECT_TRUE(ex.ranked.empty());
  }
}

TEST(Explainer, EqualWeightsReduceToMiOnly) {
  // sum_e w m_e with a common w is w * S, i.e. alpha shifted by w.
  const HeteroGraph g = random_graph(6, 6, 0.3, 0.3, 12);
  const Triple target = target_in(g);
  const RgcnModel m = model_for(g, 6, 12);
  ExplainConfig cete;
  cete.weights = {0.25, 0.25, 0.25, 0.25};
  cete.alpha = 0.45;
  cete.beta = 0.0;
  cete.iterations = 100;
  ExplainConfig gnne = cete;
  gnne.alpha = 0.2;
  const Explanation a = explain_cet(m, g, target, cete);
  const Explanation b = explain_mi_only(m, g, target, gnne);
  ASSERT_EQ(a.ranked.size(), b.ranked.size());
  for (std::size_t i = 0; i < a.ranked.size(); ++i) EXPECT_EQ(a.ranked[i].triple, b.ranked[i].triple);
  EXPECT_EQ(b.method, "GNNE");
  EXPECT_EQ(b.weights, (std::array<double, 4>{0, 0, 0, 0}));
}

TEST(Explainer, CounterfactualMatchesIndependentRescoring) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const HeteroGraph g = random_graph(5, 5, 0.35, 0.3, seed + 30);
    const Triple target = target_in(g);
    const RgcnModel m = model_for(g, 6, seed);
    ExplainConfig cfg;
    cfg.top_k = 1000;
    const Explanation ex = explain_counterfactual(m, g, target, cfg);
    const Neighborhood n = extract_neighborhood(g, target, 2);
    // Oracle: a full-graph forward over just the neighbourhood triples.
    const HeteroGraph sub = g.with_triples(n.triples);
    const double base = link_probability(m, sub, rgcn_forward(m, sub), target);
    std::map<Triple, double> want;
    for (std::size_t e = 0; e < n.triples.size(); ++e) {
      std::vector<double> scale(n.triples.size(), 1.0);
      scale[e] = 0.0;
      want[n.triples[e]] = base - link_probability(m, sub, rgcn_forward(m, sub, scale), target);
    }
    ASSERT_EQ(ex.ranked.size(), n.triples.size());
    for (std::size_t i = 0; i < ex.ranked.size(); ++i) {
      EXPECT_NEAR(ex.ranked[i].importance, want.at(ex.ranked[i].triple), 1e-14);
      if (i > 0) EXPECT_GE(ex.ranked[i - 1].importance, ex.ranked[i].importance);
    }
    EXPECT_EQ(ex.method, "EXPN");
  }
}

TEST(Explainer, BetaShrinksSoftSize) {
  const HeteroGraph g = random_graph(6, 6, 0.35, 0.3, 4);
  const Triple target = target_in(g);
  const RgcnModel m = model_for(g, 6, 4);
  const Neighborhood n = extract_neighborhood(g, target, 2);
  double prev = 1e300;
  // No entropy term, a finite size budget (alpha below the Sen/Dsim weight)
  // and a long run, so the mask settles near its optimum.
  for (double beta : {0.0, 0.01, 0.1}) {
    ExplainConfig cfg;
    cfg.alpha = 0.2;
    cfg.beta = beta;
    cfg.lambda_entropy = 0.0;
    cfg.iterations = 2000;
    const double size = optimize_mask(m, g, n, cfg).soft_size();
    EXPECT_LE(size, prev + 1e-3) << "beta " << beta;
    prev = size;
  }
}

TEST(Explainer, ConfigValidation) {
  ExplainConfig cfg;
  cfg.iterations = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.weights[1] = std::nan("");
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.top_k = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(parse_method("FOO"), ArgumentError);
  EXPECT_EQ(parse_method("EXPN"), Method::kExpn);
}

TEST(ExplanationRecords, RoundTrip) {
  Explanation ex;
  ex.target = {NodeId::cell(3), RelKind::kSen, NodeId::drug(1)};
  ex.method = "CETE";
  ex.predictor_epoch = 5000;
  ex.seed = 7;
  ex.weights = {0.1, 0.4, 0.4, 0.1};
  ex.ranked = {{{NodeId::cell(2), RelKind::kCsim, NodeId::cell(3)}, 0.875},
               {{NodeId::cell(2), RelKind::kSen, NodeId::drug(1)}, 0.1 + 0.2}};
  const auto back = parse_explanations(format_explanations({ex, ex}, 42));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].target, ex.target);
  EXPECT_EQ(back[0].method, "CETE");
  EXPECT_EQ(back[0].predictor_epoch, 5000u);
  EXPECT_EQ(back[0].weights, ex.weights);
  ASSERT_EQ(back[0].ranked.size(), 2u);
  EXPECT_EQ(back[0].ranked[1].importance, ex.ranked[1].importance);
  EXPECT_EQ(back[0].ranked[0].triple, ex.ranked[0].triple);
}

TEST(ExplanationRecords, ErrorsCarryLineNumbers) {
  try {
    parse_explanations("\n{\"target\": 1}\n", "e.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("e.jsonl:2"), std::string::npos) << e.what();
  }
}
