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

#include "cetx/cli/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cetx/errors.hpp"

namespace cetx {

void BenchConfig::validate() const {
  if (cluster_size < 2) throw ConfigError("bench.cluster_size must be at least 2");
  if (cells < cluster_size || drugs < cluster_size) {
    throw ConfigError("bench.cells and bench.drugs must hold at least one cluster");
  }
  const std::size_t blocks = (cells / cluster_size) * (drugs / cluster_size);
  if (targets > blocks) {
    throw ConfigError("bench.targets = " + std::to_string(targets) + " exceeds the " +
                      std::to_string(blocks) + " available cluster blocks");
  }
  if (!(noise_sen >= 0.0 && noise_res >= 0.0 && noise_sen + noise_res <= 1.0)) {
    throw ConfigError("bench.noise_sen and bench.noise_res must be >= 0 with sum <= 1");
  }
  if (!(feature_noise >= 0.0)) throw ConfigError("bench.feature_noise must be >= 0");
}

namespace {

// Members of cluster k among n nodes; the last cluster absorbs the remainder.
std::vector<std::size_t> cluster_members(std::size_t k, std::size_t n, std::size_t size) {
  const std::size_t clusters = n / size;
  const std::size_t lo = k * size;
  const std::size_t hi = (k + 1 == clusters) ? n : lo + size;
  std::vector<std::size_t> out;
  for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

std::size_t cluster_of(std::size_t i, std::size_t n, std::size_t size) {
  return std::min(i / size, n / size - 1);
}

// Cosine between a hub and each of its members. Members of one cluster then
// sit at kHubCosine^2 from each other, below any cut in between.
constexpr double kHubCosine = 0.93;

// Hub rows are the one-hot cluster code. The o-th non-hub member of a cluster
// mixes that code with a one-hot "member slot" shared across clusters.
Matrix star_features(std::size_t n, std::size_t size, std::span<const std::size_t> hubs,
                     double noise, std::mt19937_64& rng) {
  const std::size_t clusters = n / size;
  const std::size_t slots = size + n % size;
  const double side = std::sqrt(1.0 - kHubCosine * kHubCosine);
  std::normal_distribution<double> gauss(0.0, noise);
  Matrix f(n, clusters + slots);
  for (std::size_t k = 0; k < clusters; ++k) {
    std::size_t slot = 0;
    for (std::size_t i : cluster_members(k, n, size)) {
      if (i == hubs[k]) {
        f(i, k) = 1.0;
      } else {
        f(i, k) = kHubCosine;
        f(i, clusters + slot++) = side;
      }
    }
  }
  if (noise > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) += gauss(rng);
    }
  }
  return f;
}

std::vector<Triple> star_triples(std::size_t n, std::size_t size,
                                 std::span<const std::size_t> hubs, NodeKind kind) {
  const RelKind rel = kind == NodeKind::kCellLine ? RelKind::kCsim : RelKind::kDsim;
  std::vector<Triple> out;
  for (std::size_t k = 0; k < hubs.size(); ++k) {
    const NodeId hub{kind, static_cast<std::uint32_t>(hubs[k])};
    for (std::size_t i : cluster_members(k, n, size)) {
      if (i == hubs[k]) continue;
      const NodeId member{kind, static_cast<std::uint32_t>(i)};
      out.push_back({hub, rel, member});
      out.push_back({member, rel, hub});
    }
  }
  return out;
}

void check_similarity(const Matrix& features, NodeKind kind, const SimilarityMode& mode,
                      std::vector<Triple> want) {
  auto built = build_similarity_triples(features, kind, mode).triples;
  std::sort(built.begin(), built.end());
  std::sort(want.begin(), want.end());
  if (built != want) {
    throw ConfigError(std::string("bench features do not reproduce the planted ") +
                      (kind == NodeKind::kCellLine ? "cell" : "drug") +
                      " similarity stars under the configured similarity cut");
  }
}

std::vector<std::size_t> draw_hubs(std::size_t n, std::size_t size, std::mt19937_64& rng) {
  std::vector<std::size_t> hubs;
  for (std::size_t k = 0; k < n / size; ++k) {
    const auto members = cluster_members(k, n, size);
    hubs.push_back(members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)]);
  }
  return hubs;
}

}  // namespace

BenchData generate_bench(const BenchConfig& cfg, const SimilarityMode& cell_similarity,
                         const SimilarityMode& drug_similarity) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  BenchData out;
  const auto cell_hubs = draw_hubs(cfg.cells, cfg.cluster_size, rng);
  const auto drug_hubs = draw_hubs(cfg.drugs, cfg.cluster_size, rng);
  out.cell_features = star_features(cfg.cells, cfg.cluster_size, cell_hubs, cfg.feature_noise, rng);
  out.drug_features = star_features(cfg.drugs, cfg.cluster_size, drug_hubs, cfg.feature_noise, rng);
  auto cell_stars = star_triples(cfg.cells, cfg.cluster_size, cell_hubs, NodeKind::kCellLine);
  auto drug_stars = star_triples(cfg.drugs, cfg.cluster_size, drug_hubs, NodeKind::kDrug);
  check_similarity(out.cell_features, NodeKind::kCellLine, cell_similarity, cell_stars);
  check_similarity(out.drug_features, NodeKind::kDrug, drug_similarity, drug_stars);

  const std::size_t cell_clusters = cfg.cells / cfg.cluster_size;
  const std::size_t drug_clusters = cfg.drugs / cfg.cluster_size;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < cell_clusters; ++i) {
    for (std::size_t j = 0; j < drug_clusters; ++j) blocks.emplace_back(i, j);
  }
  std::shuffle(blocks.begin(), blocks.end(), rng);
  blocks.resize(cfg.targets);

  std::set<std::pair<std::size_t, std::size_t>> planted_blocks(blocks.begin(), blocks.end());
  std::map<std::pair<std::size_t, std::size_t>, RelKind> edges;  // (cell, drug) -> rho
  std::bernoulli_distribution coin(0.5);

  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto cells = cluster_members(blocks[k].first, cfg.cells, cfg.cluster_size);
    const auto drugs = cluster_members(blocks[k].second, cfg.drugs, cfg.cluster_size);
    const int situation = static_cast<int>(k % 3) + 1;
    // The endpoint whose similar neighbours carry the evidence is the hub;
    // the other one is any member.
    const std::size_t c_any = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
    const std::size_t d_any = drugs[std::uniform_int_distribution<std::size_t>(0, drugs.size() - 1)(rng)];
    const std::size_t c = situation == 1 ? c_any : cell_hubs[blocks[k].first];
    const std::size_t d = situation == 2 ? d_any : drug_hubs[blocks[k].second];
    const bool sen_draw = coin(rng);
    RelKind rho = sen_draw ? RelKind::kSen : RelKind::kRes;
    if (cfg.target_relation == TargetRelation::kSen) rho = RelKind::kSen;
    if (cfg.target_relation == TargetRelation::kRes) rho = RelKind::kRes;

    GroundTruthSet key;
    key.target = {NodeId::cell(c), rho, NodeId::drug(d)};
    auto add_sim = [&](NodeKind kind, std::size_t a, std::size_t b, std::uint8_t tag) {
      const RelKind rel = kind == NodeKind::kCellLine ? RelKind::kCsim : RelKind::kDsim;
      key.members[{NodeId{kind, static_cast<std::uint32_t>(a)}, rel, NodeId{kind, static_cast<std::uint32_t>(b)}}] |= tag;
      key.members[{NodeId{kind, static_cast<std::uint32_t>(b)}, rel, NodeId{kind, static_cast<std::uint32_t>(a)}}] |= tag;
    };
    auto add_response = [&](std::size_t cell, std::size_t drug, std::uint8_t tag) {
      edges[{cell, drug}] = rho;
      key.members[{NodeId::cell(cell), rho, NodeId::drug(drug)}] |= tag;
    };
    if (situation == 1) {
      for (std::size_t dd : drugs) {
        if (dd == d) continue;
        add_response(c, dd, kSit1);
        add_sim(NodeKind::kDrug, dd, d, kSit1);
      }
    } else if (situation == 2) {
      for (std::size_t cc : cells) {
        if (cc == c) continue;
        add_response(cc, d, kSit2);
        add_sim(NodeKind::kCellLine, cc, c, kSit2);
      }
    } else {
      for (std::size_t cc : cells) {
        if (cc == c) continue;
        add_sim(NodeKind::kCellLine, cc, c, kSit3);
        for (std::size_t dd : drugs) {
          if (dd == d) continue;
          add_response(cc, dd, kSit3);
        }
      }
      for (std::size_t dd : drugs) {
        if (dd != d) add_sim(NodeKind::kDrug, dd, d, kSit3);
      }
    }
    out.targets.push_back(key.target);
    out.answer_key.push_back(std::move(key));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < cfg.cells; ++c) {
    for (std::size_t d = 0; d < cfg.drugs; ++d) {
      const auto block = std::make_pair(cluster_of(c, cfg.cells, cfg.cluster_size),
                                        cluster_of(d, cfg.drugs, cfg.cluster_size));
      if (planted_blocks.contains(block)) continue;
      const double u = unit(rng);
      if (u < cfg.noise_sen) {
        edges[{c, d}] = RelKind::kSen;
      } else if (u < cfg.noise_sen + cfg.noise_res) {
        edges[{c, d}] = RelKind::kRes;
      }
    }
  }

  std::uniform_real_distribution<double> threshold_dist(1.0, 10.0);
  std::vector<double> thresholds(cfg.drugs);
  for (double& t : thresholds) t = threshold_dist(rng);
  std::uniform_real_distribution<double> below(0.2, 0.8);
  std::uniform_real_distribution<double> above(1.2, 5.0);
  std::vector<Triple> response;
  for (const auto& [pair, rho] : edges) {
    const auto [c, d] = pair;
    const double t = thresholds[d];
    const double ic50 = t * (rho == RelKind::kSen ? below(rng) : above(rng));
    out.responses.push_back({NodeId::cell(c), NodeId::drug(d), ic50, t});
    response.push_back({NodeId::cell(c), rho, NodeId::drug(d)});
  }

  out.graph = assemble_graph(response, cell_stars, drug_stars, out.cell_features,
                             out.drug_features);
  return out;
}

}  // namespace cetx
