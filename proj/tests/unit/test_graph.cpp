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
#include "cetx/graph/construction.hpp"
#include "cetx/graph/hetero_graph.hpp"
#include "cetx/graph/io.hpp"
#include "test_util.hpp"

using namespace cetx;
using cetx::testing::random_features;
using cetx::testing::random_graph;

namespace {

Triple sen(std::uint32_t c, std::uint32_t d) { return {NodeId::cell(c), RelKind::kSen, NodeId::drug(d)}; }
Triple res(std::uint32_t c, std::uint32_t d) { return {NodeId::cell(c), RelKind::kRes, NodeId::drug(d)}; }
Triple csim(std::uint32_t a, std::uint32_t b) { return {NodeId::cell(a), RelKind::kCsim, NodeId::cell(b)}; }

double brute_cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace

TEST(Types, NodeAndTripleText) {
  EXPECT_EQ(NodeId::cell(3).str(), "c3");
  EXPECT_EQ(NodeId::parse("d12"), NodeId::drug(12));
  EXPECT_THROW(NodeId::parse("x1"), ParseError);
  EXPECT_THROW(NodeId::parse("c"), ParseError);
  EXPECT_EQ(rel_name(RelKind::kDsim), "Dsim");
  EXPECT_TRUE(endpoint_kinds_valid(sen(0, 0)));
  EXPECT_FALSE(endpoint_kinds_valid({NodeId::drug(0), RelKind::kSen, NodeId::cell(0)}));
  EXPECT_FALSE(endpoint_kinds_valid(csim(1, 1)));
}

TEST(Similarity, ThresholdMatchesBruteForce) {
  const Matrix f = random_features(12, 4, 9);
  const auto r = build_similarity_triples(f, NodeKind::kCellLine, SimilarityThreshold{0.3});
  std::set<Triple> got(r.triples.begin(), r.triples.end());
  std::set<Triple> want;
  for (std::uint32_t a = 0; a < 12; ++a)
    for (std::uint32_t b = 0; b < 12; ++b)
      if (a != b && brute_cosine(f.row(a), f.row(b)) >= 0.3) want.insert(csim(a, b));
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.size(), r.triples.size());
}

TEST(Similarity, CosineKnownValues) {
  const std::vector<double> a = {1, 0}, b = {0, 1}, c = {1, 1};
  EXPECT_NEAR(cosine_similarity(a, b), 0.0, 1e-15);
  EXPECT_NEAR(cosine_similarity(a, c), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Similarity, QuantileKeepsRoundedShare) {
  const Matrix f = random_features(10, 3, 2);
  const auto r = build_similarity_triples(f, NodeKind::kDrug, SimilarityQuantile{0.2});
  EXPECT_EQ(r.triples.size(), 2u * 9u);  // round(0.2 * 45) pairs, both directions
  for (const Triple& t : r.triples) {
    EXPECT_GE(brute_cosine(f.row(t.head.index), f.row(t.tail.index)), r.threshold - 1e-15);
  }
}

TEST(Similarity, ZeroNormRowsExcluded) {
  Matrix f{{1, 0}, {0, 0}, {1, 0.01}};
  const auto r = build_similarity_triples(f, NodeKind::kCellLine, SimilarityThreshold{0.5});
  ASSERT_EQ(r.excluded_rows, std::vector<std::size_t>{1});
  EXPECT_EQ(r.triples.size(), 2u);
}

TEST(Similarity, BadArgumentsRejected) {
  const Matrix f = random_features(4, 2, 1);
  EXPECT_THROW(build_similarity_triples(f, NodeKind::kCellLine, SimilarityThreshold{1.5}), ArgumentError);
  EXPECT_THROW(build_similarity_triples(f, NodeKind::kCellLine, SimilarityQuantile{0.0}), ArgumentError);
  EXPECT_THROW(build_similarity_triples(Matrix(1, 2, 1.0), NodeKind::kCellLine, SimilarityThreshold{0.5}),
               ValidationError);
}

TEST(Binarize, PerDrugAndGlobal) {
  std::vector<ResponseRecord> recs = {{NodeId::cell(0), NodeId::drug(0), 1.0, 2.0},
                                      {NodeId::cell(1), NodeId::drug(0), 3.0, 2.0},
                                      {NodeId::cell(0), NodeId::drug(1), 2.0, 2.0}};
  const auto per = binarize_responses(recs, thresholds_from_records(recs));
  EXPECT_EQ(per, (std::vector<Triple>{sen(0, 0), res(1, 0), res(0, 1)}));
  const auto global = binarize_responses(recs, GlobalThreshold{2.5});
  EXPECT_EQ(global, (std::vector<Triple>{sen(0, 0), res(1, 0), sen(0, 1)}));
}

TEST(Binarize, Errors) {
  std::vector<ResponseRecord> recs = {{NodeId::cell(0), NodeId::drug(0), 1.0, 2.0},
                                      {NodeId::cell(1), NodeId::drug(0), 3.0, 4.0}};
  EXPECT_THROW(thresholds_from_records(recs), ConfigError);
  std::vector<ResponseRecord> missing = {{NodeId::cell(0), NodeId::drug(3), 1.0, std::nullopt}};
  try {
    binarize_responses(missing, thresholds_from_records(missing));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("d3"), std::string::npos);
  }
  std::vector<ResponseRecord> nan = {{NodeId::cell(0), NodeId::drug(0), std::nan(""), 1.0}};
  EXPECT_THROW(binarize_responses(nan, GlobalThreshold{1.0}), ValidationError);
}

TEST(HeteroGraph, DeduplicatesAndIndexes) {
  std::vector<Triple> t = {sen(0, 1), sen(0, 1), csim(0, 1), csim(1, 0), res(1, 0)};
  const HeteroGraph g = assemble_graph(t, 2, 2);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.duplicates_dropped(), 1u);
  EXPECT_EQ(g.count(RelKind::kCsim), 2u);
  EXPECT_TRUE(g.contains(res(1, 0)));
  EXPECT_FALSE(g.contains(res(0, 1)));
  EXPECT_EQ(g.out_edges(NodeId::cell(0), RelKind::kSen).size(), 1u);
  EXPECT_EQ(g.incident(NodeId::cell(0)).size(), 3u);
  EXPECT_EQ(g.node_index(NodeId::drug(1)), 3u);
  EXPECT_THROW(g.node_index(NodeId::drug(2)), LookupError);
}

TEST(HeteroGraph, RejectsBadEndpoints) {
  std::vector<Triple> t = {{NodeId::drug(0), RelKind::kSen, NodeId::cell(0)}};
  EXPECT_THROW(assemble_graph(t, 1, 1), ValidationError);
  std::vector<Triple> out_of_range = {sen(0, 5)};
  EXPECT_THROW(assemble_graph(out_of_range, 1, 1), ValidationError);
}

TEST(Neighborhood, MatchesBruteForceDistances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HeteroGraph g = random_graph(8, 7, 0.15, 0.15, seed);
    const Triple target = sen(seed % 8, seed % 7);
    for (std::size_t hops : {0u, 1u, 2u, 3u}) {
      const Neighborhood n = extract_neighborhood(g, target, hops);
      // Bellman-Ford style relaxation over undirected triples.
      const std::size_t inf = 1000;
      std::vector<std::size_t> dist(g.node_count(), inf);
      dist[g.node_index(target.head)] = 0;
      dist[g.node_index(target.tail)] = 0;
      for (std::size_t round = 0; round < g.node_count(); ++round)
        for (const Triple& t : g.triples()) {
          const std::size_t a = g.node_index(t.head), b = g.node_index(t.tail);
          dist[a] = std::min(dist[a], dist[b] + 1);
          dist[b] = std::min(dist[b], dist[a] + 1);
        }
      std::vector<NodeId> nodes;
      for (std::size_t v = 0; v < g.node_count(); ++v)
        if (dist[v] <= hops) nodes.push_back(g.node_at(v));
      EXPECT_EQ(n.nodes, nodes);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Triple& t = g.triple(i);
        if (t != target && dist[g.node_index(t.head)] <= hops && dist[g.node_index(t.tail)] <= hops)
          idx.push_back(i);
      }
      EXPECT_EQ(n.triple_indices, idx);
    }
  }
}

TEST(Neighborhood, ExcludesTargetItself) {
  const HeteroGraph g = assemble_graph(std::vector<Triple>{sen(0, 0), res(1, 0)}, 2, 1);
  const Neighborhood n = extract_neighborhood(g, sen(0, 0), 1);
  EXPECT_EQ(n.triples, std::vector<Triple>{res(1, 0)});
}

TEST(Io, TriplesRoundTripAndLineNumbers) {
  const std::vector<Triple> t = {sen(0, 1), csim(2, 3)};
  EXPECT_EQ(io::parse_triples(io::format_triples(t)), t);
  try {
    io::parse_triples("c0\t1\td0\nc0\t7\td0\n", "x.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x.tsv:2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::parse_triples("d0\t1\tc0\n"), ParseError);
}

TEST(Io, FeaturesRoundTripExactly) {
  const Matrix f = random_features(3, 4, 8);
  const Matrix back = io::parse_features(io::format_features(f, NodeKind::kDrug), NodeKind::kDrug);
  EXPECT_EQ(back, f);
  EXPECT_THROW(io::parse_features("d0,1\nd2,1\n", NodeKind::kDrug), ParseError);
}

TEST(Io, ResponsesRoundTrip) {
  std::vector<ResponseRecord> r = {{NodeId::cell(0), NodeId::drug(1), 0.125, 3.5},
                                   {NodeId::cell(2), NodeId::drug(0), 7.0, std::nullopt}};
  const auto back = io::parse_responses(io::format_responses(r));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].ic50, 0.125);
  EXPECT_EQ(back[0].threshold, 3.5);
  EXPECT_FALSE(back[1].threshold.has_value());
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    EXPECT_EQ(io::parse_double(io::format_double(v)), v);
  }
  EXPECT_THROW(io::parse_double("1.0x"), ParseError);
}
