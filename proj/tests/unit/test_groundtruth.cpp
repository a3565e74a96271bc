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
#include "cetx/groundtruth/groundtruth.hpp"
#include "cetx/groundtruth/records.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cetx;

namespace {

Triple T(NodeId h, RelKind r, NodeId t) { return {h, r, t}; }
const NodeId c0 = NodeId::cell(0), c1 = NodeId::cell(1), c2 = NodeId::cell(2);
const NodeId d0 = NodeId::drug(0), d1 = NodeId::drug(1), d2 = NodeId::drug(2);

}  // namespace

TEST(GroundTruth, ThreeSituationsByHand) {
  const std::vector<Triple> t = {
      T(c0, RelKind::kSen, d1), T(d1, RelKind::kDsim, d0),                             // sit 1
      T(c1, RelKind::kSen, d0), T(c1, RelKind::kCsim, c0), T(c0, RelKind::kCsim, c1),  // sit 2
      T(c1, RelKind::kSen, d1),                                                        // sit 3
      T(c2, RelKind::kSen, d0),  // no similarity to c0
      T(c0, RelKind::kRes, d1),  // wrong relation
  };
  const HeteroGraph g = assemble_graph(t, 3, 3);
  const GroundTruthSet gt = build_ground_truth(g, T(c0, RelKind::kSen, d0));
  std::map<Triple, std::uint8_t> want = {
      {T(c0, RelKind::kSen, d1), kSit1},
      {T(d1, RelKind::kDsim, d0), kSit1 | kSit3},
      {T(c1, RelKind::kSen, d0), kSit2},
      {T(c1, RelKind::kCsim, c0), kSit2 | kSit3},
      {T(c0, RelKind::kCsim, c1), kSit2 | kSit3},
      {T(c1, RelKind::kSen, d1), kSit3},
  };
  EXPECT_EQ(gt.members, want);
}

TEST(GroundTruth, MatchesBruteForceEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const HeteroGraph g = cetx::testing::random_graph(10, 10, 0.25, 0.2, seed);
    for (std::uint32_t i = 0; i < 5; ++i) {
      const Triple target{NodeId::cell(i * 2), i % 2 ? RelKind::kRes : RelKind::kSen, NodeId::drug(i + seed % 5)};
      EXPECT_EQ(build_ground_truth(g, target).members, oracle::ground_truth(g, target))
          << "seed " << seed << " target " << target.str();
    }
  }
}

TEST(GroundTruth, Errors) {
  const HeteroGraph g = cetx::testing::random_graph(3, 3, 0.5, 0.5, 1);
  EXPECT_THROW(build_ground_truth(g, T(c0, RelKind::kCsim, c1)), ArgumentError);
  EXPECT_THROW(build_ground_truth(g, T(NodeId::cell(9), RelKind::kSen, d0)), LookupError);
}

TEST(GroundTruth, HistogramBins) {
  const std::vector<std::size_t> sizes = {3, 10, 12, 19, 20, 41};
  const auto bins = gt_distribution(sizes, 10, 10);
  ASSERT_EQ(bins.size(), 4u);
  EXPECT_EQ(bins[0].lo, 10u);
  EXPECT_EQ(bins[0].hi, 19u);
  EXPECT_EQ(bins[0].count, 3u);
  EXPECT_EQ(bins[2].count, 0u);
  EXPECT_DOUBLE_EQ(bins[0].proportion, 60.0);
  EXPECT_TRUE(gt_distribution(std::vector<std::size_t>{}, 10, 10).empty());
  EXPECT_THROW(gt_distribution(sizes, 0, 10), ArgumentError);
}

TEST(GroundTruthRecords, RoundTripAndErrors) {
  GroundTruthSet gt;
  gt.target = T(c0, RelKind::kSen, d0);
  gt.members[T(c1, RelKind::kSen, d0)] = kSit2;
  gt.members[T(c1, RelKind::kCsim, c0)] = kSit2 | kSit3;
  const auto back = parse_ground_truth(format_ground_truth({gt, gt}, 5));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].target, gt.target);
  EXPECT_EQ(back[1].members, gt.members);
  EXPECT_THROW(parse_ground_truth(
                   R"({"target":{"head":"c0","rel":1,"tail":"d0"},"members":[{"triple":{"head":"c1","rel":1,"tail":"d0"},"situations":[4]}]})"),
               ParseError);
}

TEST(GroundTruthRecords, HistogramCsv) {
  std::vector<HistogramBin> bins = {{10, 19, 2, 66.666}, {20, 29, 1, 33.333}};
  EXPECT_EQ(format_histogram(bins), "bin_lo,bin_hi,count,proportion\n10,19,2,66.67\n20,29,1,33.33\n");
}
