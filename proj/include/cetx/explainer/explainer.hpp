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
#include <string>
#include <vector>

#include "cetx/graph/hetero_graph.hpp"
#include "cetx/model/rgcn.hpp"

namespace cetx {

// How the size penalty alpha*S + beta*S^2 enters the maximized structure
// score. kSubtract shrinks explanations; kAdd is the literal "+ Penalty"
// reading, kept for ablation.
enum class PenaltySign : std::uint8_t { kSubtract, kAdd };

struct ExplainConfig {
  // Per-relation weights indexed by RelKind code (Res, Sen, Dsim, Csim).
  std::array<double, kNumRelations> weights = {0.1, 0.4, 0.4, 0.1};
  double alpha = 0.6;
  double beta = 0.0;
  double lambda_score = 1.0;
  double lambda_entropy = 0.1;
  PenaltySign penalty_sign = PenaltySign::kSubtract;
  double learning_rate = 0.05;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  std::size_t iterations = 300;
  std::size_t top_k = 10;
  std::uint64_t seed = 0;
  double init_noise = 0.01;
  // Neighbourhood radius; defaults to the model's layer count.
  std::optional<std::size_t> hops;

  void validate() const;  // throws ConfigError
};

// One latent per neighbourhood triple; the mask is sigmoid(latent).
class EdgeMask {
 public:
  EdgeMask() = default;
  explicit EdgeMask(std::vector<double> latent) : latent_(std::move(latent)) {}

  std::size_t size() const { return latent_.size(); }
  std::span<const double> latent() const { return latent_; }
  std::span<double> latent() { return latent_; }
  double value(std::size_t e) const;
  std::vector<double> values() const;
  double soft_size() const;

 private:
  std::vector<double> latent_;
};

struct RankedTriple {
  Triple triple;
  double importance = 0.0;
};

struct Explanation {
  Triple target;
  std::string method;  // "CETE", "GNNE" or "EXPN"
  std::size_t predictor_epoch = 0;
  std::uint64_t seed = 0;
  std::array<double, kNumRelations> weights{};
  bool empty_neighborhood = false;
  std::vector<RankedTriple> ranked;  // importance descending
};

struct LossAndGrad {
  double loss = 0.0;
  double neg_log_prob = 0.0;
  std::vector<double> grad;  // d loss / d latent
};

// The mask objective on one neighbourhood:
//   -log P(target | masked n)
//   - lambda_s * [ sum_e w_rel(e) m_e  -/+  (alpha S + beta S^2) ]
//   + lambda_h * sum_e H_b(m_e)
// with S = sum_e m_e and H_b the binary entropy in nats.
class MaskObjective {
 public:
  MaskObjective(const RgcnModel& model, const HeteroGraph& g, const Neighborhood& n,
                const ExplainConfig& cfg);

  std::size_t edge_count() const { return mg_.triple_count; }
  LossAndGrad evaluate(std::span<const double> latent) const;
  // P(target) with per-edge scales (empty = unmasked).
  double probability(std::span<const double> scale) const;

 private:
  const RgcnModel& model_;
  const HeteroGraph& g_;
  const Neighborhood& n_;
  ExplainConfig cfg_;
  MessageGraph mg_;
  Matrix input_;
  std::size_t head_ = 0;
  std::size_t tail_ = 0;
};

double penalty(double soft_size, double alpha, double beta);
double binary_entropy(double m);

LossAndGrad explanation_loss(const RgcnModel& model, const HeteroGraph& g,
                             const Neighborhood& n, const EdgeMask& mask,
                             const ExplainConfig& cfg);

struct MaskTrace {
  std::vector<double> loss;
};

// Adam on the latents from 0 plus seeded N(0, init_noise^2) noise.
EdgeMask optimize_mask(const RgcnModel& model, const HeteroGraph& g, const Neighborhood& n,
                       const ExplainConfig& cfg, MaskTrace* trace = nullptr);

Explanation explain_cet(const RgcnModel& model, const HeteroGraph& g, const Triple& target,
                        const ExplainConfig& cfg);
// Same pipeline with every relation weight forced to zero.
Explanation explain_mi_only(const RgcnModel& model, const HeteroGraph& g,
                            const Triple& target, const ExplainConfig& cfg);
// Exact single-edge deletion: importance(e) = P(target | n) - P(target | n, s_e = 0).
Explanation explain_counterfactual(const RgcnModel& model, const HeteroGraph& g,
                                   const Triple& target, const ExplainConfig& cfg);

enum class Method : std::uint8_t { kCete, kGnne, kExpn };
std::string method_tag(Method m);
Method parse_method(std::string_view tag);  // throws ArgumentError
Explanation explain(Method m, const RgcnModel& model, const HeteroGraph& g,
                    const Triple& target, const ExplainConfig& cfg);

// Importance descending, then neighbourhood index ascending; truncated to k.
std::vector<RankedTriple> rank_by_importance(std::span<const Triple> triples,
                                             std::span<const double> importance,
                                             std::size_t top_k);

}  // namespace cetx
