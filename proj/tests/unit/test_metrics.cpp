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

#include "cetx/errors.hpp"
#include "cetx/evalmetrics/metrics.hpp"
#include "cetx/evalmetrics/report.hpp"
#include "oracles.hpp"

using namespace cetx;

namespace {

Explanation ranking(const Triple& target, std::vector<Triple> triples, std::string method = "CETE") {
  Explanation ex;
  ex.target = target;
  ex.method = std::move(method);
  for (std::size_t i = 0; i < triples.size(); ++i) ex.ranked.push_back({triples[i], 1.0 / (i + 1.0)});
  return ex;
}

Triple sen(std::uint32_t c, std::uint32_t d) { return {NodeId::cell(c), RelKind::kSen, NodeId::drug(d)}; }
Triple dsim(std::uint32_t a, std::uint32_t b) { return {NodeId::drug(a), RelKind::kDsim, NodeId::drug(b)}; }

GroundTruthSet gt_of(const Triple& target, std::vector<Triple> members) {
  GroundTruthSet gt;
  gt.target = target;
  for (const Triple& t : members) gt.members[t] = kSit1;
  return gt;
}

}  // namespace

TEST(Metrics, MatchSetOracles) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracle::random_instance(rng);
    for (std::size_t k : {1u, 5u, 10u}) {
      EXPECT_EQ(precision_at_k(inst.ex, inst.gt, k), oracle::precision(inst.ex, inst.gt, k));
      const std::size_t n = std::max(k, inst.ex.ranked.size());
      EXPECT_EQ(recall_at_k(inst.ex, inst.gt, k), oracle::recall(inst.ex, inst.gt, k, n));
    }
  }
}

TEST(Metrics, PrecisionCases) {
  const Triple target = sen(0, 0);
  const auto gt = gt_of(target, {sen(1, 0), sen(2, 0)});
  EXPECT_EQ(precision_at_k(ranking(target, {sen(1, 0), sen(2, 0)}), gt, 10), 1.0);
  EXPECT_EQ(precision_at_k(ranking(target, {sen(3, 0), sen(1, 0)}), gt, 10), 0.5);
  EXPECT_FALSE(precision_at_k(ranking(target, {}), gt, 10).has_value());
}

TEST(Metrics, RecallCases) {
  const Triple target = sen(0, 0);
  const auto gt = gt_of(target, {sen(1, 0), sen(2, 0), dsim(0, 1)});
  // TP@2 = 1, FN@N = |{dsim(0,1)}| since sen(2,0) appears lower in the list.
  const auto ex = ranking(target, {sen(1, 0), sen(5, 0), sen(2, 0)});
  EXPECT_DOUBLE_EQ(*recall_at_k(ex, gt, 2), 0.5);
  EXPECT_DOUBLE_EQ(*recall_at_k(ex, gt, 3), 2.0 / 3.0);
  EXPECT_FALSE(recall_at_k(ex, gt_of(target, {}), 2).has_value());
  EXPECT_THROW(recall_at_k(ex, gt, 5, 3), ArgumentError);
  // Every GT member ranked, none in the top k.
  const auto low = ranking(target, {sen(7, 0), sen(1, 0)});
  EXPECT_EQ(recall_at_k(low, gt_of(target, {sen(1, 0)}), 1), 0.0);
}

TEST(Metrics, RecallMonotoneInK) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto inst = oracle::random_instance(rng);
    const std::size_t n = std::max<std::size_t>(20, inst.ex.ranked.size());
    double prev = -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto r = recall_at_k(inst.ex, inst.gt, k, n);
      if (!r) break;
      EXPECT_GE(*r, prev);
      prev = *r;
    }
  }
}

TEST(Metrics, F1) {
  EXPECT_DOUBLE_EQ(f1_at_k(0.5, 0.5), 0.5);
  EXPECT_EQ(f1_at_k(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(f1_at_k(1.0, 0.5), 2.0 / 3.0);
}

TEST(Metrics, StabilityMatchesOracle) {
  std::mt19937_64 rng(5);
  std::vector<Explanation> a, b;
  for (std::uint32_t i = 0; i < 30; ++i) {
    auto x = oracle::random_instance(rng).ex;
    auto y = oracle::random_instance(rng).ex;
    x.target = y.target = sen(i, i);
    a.push_back(x);
    b.push_back(y);
  }
  std::shuffle(b.begin(), b.end(), rng);
  EXPECT_EQ(stability(a, b, 10), oracle::stability(a, b, 10));
}

TEST(Metrics, StabilityWithItselfIsK) {
  std::vector<Explanation> runs;
  for (std::uint32_t i = 0; i < 5; ++i) {
    std::vector<Triple> t;
    for (std::uint32_t j = 0; j < 12; ++j) t.push_back(sen(j + 1, i));
    runs.push_back(ranking(sen(0, i), t));
  }
  EXPECT_EQ(stability(runs, runs, 10), 10.0);
  std::vector<Explanation> disjoint = runs;
  for (auto& ex : disjoint)
    for (auto& r : ex.ranked) r.triple.head.index += 100;
  EXPECT_EQ(stability(runs, disjoint, 10), 0.0);
}

TEST(Metrics, StabilityPairingErrors) {
  std::vector<Explanation> a = {ranking(sen(0, 0), {sen(1, 0)})};
  std::vector<Explanation> b = {ranking(sen(0, 1), {sen(1, 0)})};
  EXPECT_THROW(stability(a, b, 10), PairingError);
  std::vector<Explanation> c = {ranking(sen(0, 0), {sen(1, 0)}, "EXPN")};
  EXPECT_THROW(stability(a, c, 10), PairingError);
}

TEST(Metrics, EdgeTypesMatchOracle) {
  std::mt19937_64 rng(9);
  std::vector<Explanation> exs;
  for (int i = 0; i < 30; ++i) exs.push_back(oracle::random_instance(rng).ex);
  EXPECT_EQ(edge_type_distribution(exs, 10), oracle::edge_types(exs, 10));
  std::vector<Explanation> one_each = {ranking(sen(0, 0), {
      sen(1, 0), {NodeId::cell(1), RelKind::kRes, NodeId::drug(0)}, dsim(0, 1),
      {NodeId::cell(0), RelKind::kCsim, NodeId::cell(1)}})};
  const auto d = edge_type_distribution(one_each, 4);
  EXPECT_EQ(*d, (std::array<double, 4>{0.25, 0.25, 0.25, 0.25}));
  EXPECT_FALSE(edge_type_distribution(std::vector<Explanation>{ranking(sen(0, 0), {})}, 4));
}

TEST(Metrics, EvaluateAggregatesAndFlags) {
  const Triple t0 = sen(0, 0), t1 = sen(0, 1), t2 = sen(0, 2);
  std::vector<Explanation> exs = {ranking(t0, {sen(1, 0), sen(2, 0)}), ranking(t1, {}),
                                  ranking(t2, {sen(1, 2)})};
  std::vector<GroundTruthSet> gts = {gt_of(t0, {sen(1, 0)}), gt_of(t1, {sen(1, 1)}), gt_of(t2, {})};
  const MetricsReport r = evaluate(exs, gts, 10);
  EXPECT_EQ(r.target_count, 3u);
  EXPECT_EQ(r.empty_rankings, 1u);
  EXPECT_EQ(r.empty_ground_truth, 1u);
  EXPECT_DOUBLE_EQ(*r.mean_precision, (0.5 + 0.0) / 2.0);
  EXPECT_DOUBLE_EQ(*r.mean_recall, 1.0);
  gts.pop_back();
  EXPECT_THROW(evaluate(exs, gts, 10), PairingError);
}

TEST(Metrics, GtTruncatedToKScoresOne) {
  const Triple target = sen(0, 0);
  std::vector<Triple> members;
  for (std::uint32_t i = 1; i <= 8; ++i) members.push_back(sen(i, 0));
  const auto gt = gt_of(target, members);
  const auto r = evaluate(std::vector<Explanation>{ranking(target, gt.triples())},
                          std::vector<GroundTruthSet>{gt}, 10);
  EXPECT_EQ(*r.mean_precision, 1.0);
  EXPECT_EQ(*r.mean_recall, 1.0);
  EXPECT_EQ(*r.mean_f1, 1.0);

  // Larger GT: the first k members are all hits, the rest count as missed.
  for (std::uint32_t i = 9; i <= 15; ++i) members.push_back(sen(i, 0));
  const auto big = gt_of(target, members);
  const std::vector<Triple> all = big.triples();
  const std::vector<Triple> first(all.begin(), all.begin() + 10);
  const auto r2 = evaluate(std::vector<Explanation>{ranking(target, first)},
                           std::vector<GroundTruthSet>{big}, 10);
  EXPECT_EQ(*r2.mean_precision, 1.0);
  EXPECT_DOUBLE_EQ(*r2.mean_recall, 10.0 / 15.0);
}

TEST(Report, JsonAndCsv) {
  MetricsReport r;
  r.method = "CETE";
  r.k = 10;
  r.mean_precision = 0.5;
  r.stability = 8.0;
  const auto j = report_to_json(r, 0xabc);
  EXPECT_EQ(j.at("method"), "CETE");
  EXPECT_TRUE(j.at("recall").is_null());
  EXPECT_EQ(j.at("config_hash"), "0000000000000abc");
  EXPECT_EQ(format_summary_csv({r}),
            "method,k,precision,recall,f1,stability,prop_res,prop_sen,prop_dsim,prop_csim\n"
            "CETE,10,0.5,,,8,,,,\n");
}
