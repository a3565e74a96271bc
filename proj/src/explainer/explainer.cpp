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

#include "cetx/explainer/explainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "cetx/errors.hpp"
#include "cetx/log.hpp"
#include "cetx/numerics/adam.hpp"
#include "cetx/numerics/kernels.hpp"

namespace cetx {

void ExplainConfig::validate() const {
  for (double w : weights) {
    if (!std::isfinite(w)) throw ConfigError("explain weights must be finite");
  }
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ConfigError("explain alpha/beta must be >= 0");
  if (iterations < 1) throw ConfigError("explain.iterations must be >= 1");
  if (top_k < 1) throw ConfigError("explain.top_k must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("explain.learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw ConfigError("explain Adam betas must lie in [0, 1)");
  }
  if (!(init_noise >= 0.0)) throw ConfigError("explain.init_noise must be >= 0");
}

double EdgeMask::value(std::size_t e) const { return sigmoid(latent_[e]); }

std::vector<double> EdgeMask::values() const {
  std::vector<double> out(latent_.size());
  for (std::size_t e = 0; e < latent_.size(); ++e) out[e] = sigmoid(latent_[e]);
  return out;
}

double EdgeMask::soft_size() const {
  double s = 0.0;
  for (double v : latent_) s += sigmoid(v);
  return s;
}

double penalty(double soft_size, double alpha, double beta) {
  return alpha * soft_size + beta * soft_size * soft_size;
}

double binary_entropy(double m) {
  if (m <= 0.0 || m >= 1.0) return 0.0;
  return -m * std::log(m) - (1.0 - m) * std::log1p(-m);
}

MaskObjective::MaskObjective(const RgcnModel& model, const HeteroGraph& g,
                             const Neighborhood& n, const ExplainConfig& cfg)
    : model_(model), g_(g), n_(n), cfg_(cfg) {
  if (!n.contains_node(n.target.head) || !n.contains_node(n.target.tail)) {
    throw NeighborhoodError("target " + n.target.str() + " endpoints missing from neighbourhood");
  }
  mg_ = message_graph(g, n);
  input_ = input_states(model, g, mg_);
  head_ = mg_.local_of(g.node_index(n.target.head));
  tail_ = mg_.local_of(g.node_index(n.target.tail));
}

double MaskObjective::probability(std::span<const double> scale) const {
  const Matrix emb = forward(model_, g_, mg_, scale, nullptr, &input_);
  return sigmoid(link_logit(model_, emb.row(head_), n_.target.rel, emb.row(tail_)));
}

LossAndGrad MaskObjective::evaluate(std::span<const double> latent) const {
  const std::size_t ne = mg_.triple_count;
  if (latent.size() != ne) {
    throw DimensionError("mask has " + std::to_string(latent.size()) + " latents for " +
                         std::to_string(ne) + " neighbourhood triples");
  }
  const auto& k = simd::active();
  std::vector<double> mask(ne);
  for (std::size_t e = 0; e < ne; ++e) mask[e] = sigmoid(latent[e]);

  ForwardCache cache;
  const Matrix emb = forward(model_, g_, mg_, mask, &cache, &input_);
  const std::size_t dim = model_.output_dim();
  const auto rv = model_.relation_vectors.row(rel_index(n_.target.rel));
  const double logit = k.dot3(emb.row(head_).data(), rv.data(), emb.row(tail_).data(), dim);

  LossAndGrad out;
  out.neg_log_prob = softplus(-logit);
  // d(-log sigmoid(x))/dx = -sigmoid(-x)
  const double dlogit = -sigmoid(-logit);
  Matrix d_emb(emb.rows(), dim);
  k.axpy_mul(dlogit, rv.data(), emb.row(tail_).data(), d_emb.row(head_).data(), dim);
  k.axpy_mul(dlogit, rv.data(), emb.row(head_).data(), d_emb.row(tail_).data(), dim);
  BackwardResult back = backward(model_, g_, mg_, mask, cache, d_emb, nullptr, true);

  double soft_size = 0.0;
  double weighted = 0.0;
  double entropy = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    soft_size += mask[e];
    weighted += cfg_.weights[rel_index(n_.triples[e].rel)] * mask[e];
    // H_b(sigmoid(t)) = m softplus(-t) + (1 - m) softplus(t)
    entropy += mask[e] * softplus(-latent[e]) + (1.0 - mask[e]) * softplus(latent[e]);
  }
  const double sign = cfg_.penalty_sign == PenaltySign::kSubtract ? 1.0 : -1.0;
  const double pen = penalty(soft_size, cfg_.alpha, cfg_.beta);
  out.loss = out.neg_log_prob + cfg_.lambda_score * (sign * pen - weighted) +
             cfg_.lambda_entropy * entropy;

  const double dpen = sign * (cfg_.alpha + 2.0 * cfg_.beta * soft_size);
  out.grad.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const double w = cfg_.weights[rel_index(n_.triples[e].rel)];
    const double dmask = back.scale_grad[e] + cfg_.lambda_score * (dpen - w);
    const double dm_dlatent = mask[e] * (1.0 - mask[e]);
    // dH_b/dt = -t * m (1 - m)
    out.grad[e] = dmask * dm_dlatent - cfg_.lambda_entropy * latent[e] * dm_dlatent;
  }
  return out;
}

LossAndGrad explanation_loss(const RgcnModel& model, const HeteroGraph& g,
                             const Neighborhood& n, const EdgeMask& mask,
                             const ExplainConfig& cfg) {
  MaskObjective objective(model, g, n, cfg);
  return objective.evaluate(mask.latent());
}

EdgeMask optimize_mask(const RgcnModel& model, const HeteroGraph& g, const Neighborhood& n,
                       const ExplainConfig& cfg, MaskTrace* trace) {
  cfg.validate();
  MaskObjective objective(model, g, n, cfg);
  const std::size_t ne = objective.edge_count();
  std::vector<double> latent(ne, 0.0);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double& v : latent) v = cfg.init_noise * noise(rng);

  AdamSettings settings;
  settings.lr = cfg.learning_rate;
  settings.beta1 = cfg.adam_beta1;
  settings.beta2 = cfg.adam_beta2;
  AdamState state(ne, settings);
  if (trace != nullptr) trace->loss.reserve(cfg.iterations);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    LossAndGrad lg = objective.evaluate(latent);
    if (!std::isfinite(lg.loss)) {
      throw NumericError("mask loss is non-finite at iteration " + std::to_string(it) +
                         " for target " + n.target.str());
    }
    if (trace != nullptr) trace->loss.push_back(lg.loss);
    state.apply(latent, lg.grad);
  }
  return EdgeMask(std::move(latent));
}

std::vector<RankedTriple> rank_by_importance(std::span<const Triple> triples,
                                             std::span<const double> importance,
                                             std::size_t top_k) {
  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a] > importance[b];
  });
  if (order.size() > top_k) order.resize(top_k);
  std::vector<RankedTriple> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back({triples[i], importance[i]});
  return out;
}

namespace {

Explanation start(const RgcnModel& model, const Triple& target, const ExplainConfig& cfg,
                  std::string method) {
  Explanation ex;
  ex.target = target;
  ex.method = std::move(method);
  ex.predictor_epoch = model.epoch;
  ex.seed = cfg.seed;
  ex.weights = cfg.weights;
  return ex;
}

Explanation explain_masked(const RgcnModel& model, const HeteroGraph& g, const Triple& target,
                           const ExplainConfig& cfg, std::string method) {
  cfg.validate();
  Explanation ex = start(model, target, cfg, std::move(method));
  const Neighborhood n = extract_neighborhood(g, target, cfg.hops.value_or(model.layers()));
  if (n.triples.empty()) {
    ex.empty_neighborhood = true;
    log::warn("{}: empty neighbourhood for {}", ex.method, target.str());
    return ex;
  }
  const EdgeMask mask = optimize_mask(model, g, n, cfg);
  ex.ranked = rank_by_importance(n.triples, mask.values(), cfg.top_k);
  return ex;
}

}  // namespace

Explanation explain_cet(const RgcnModel& model, const HeteroGraph& g, const Triple& target,
                        const ExplainConfig& cfg) {
  return explain_masked(model, g, target, cfg, "CETE");
}

Explanation explain_mi_only(const RgcnModel& model, const HeteroGraph& g,
                            const Triple& target, const ExplainConfig& cfg) {
  ExplainConfig plain = cfg;
  plain.weights.fill(0.0);
  Explanation ex = explain_masked(model, g, target, plain, "GNNE");
  return ex;
}

Explanation explain_counterfactual(const RgcnModel& model, const HeteroGraph& g,
                                   const Triple& target, const ExplainConfig& cfg) {
  cfg.validate();
  Explanation ex = start(model, target, cfg, "EXPN");
  ex.weights.fill(0.0);
  const Neighborhood n = extract_neighborhood(g, target, cfg.hops.value_or(model.layers()));
  if (n.triples.empty()) {
    ex.empty_neighborhood = true;
    log::warn("EXPN: empty neighbourhood for {}", target.str());
    return ex;
  }
  MaskObjective objective(model, g, n, cfg);
  const double base = objective.probability({});
  std::vector<double> scale(n.triples.size(), 1.0);
  std::vector<double> delta(n.triples.size());
  for (std::size_t e = 0; e < scale.size(); ++e) {
    scale[e] = 0.0;
    delta[e] = base - objective.probability(scale);
    scale[e] = 1.0;
  }
  ex.ranked = rank_by_importance(n.triples, delta, cfg.top_k);
  return ex;
}

std::string method_tag(Method m) {
  switch (m) {
    case Method::kCete:
      return "CETE";
    case Method::kGnne:
      return "GNNE";
    case Method::kExpn:
      return "EXPN";
  }
  return "?";
}

Method parse_method(std::string_view tag) {
  if (tag == "CETE") return Method::kCete;
  if (tag == "GNNE") return Method::kGnne;
  if (tag == "EXPN") return Method::kExpn;
  throw ArgumentError("unknown explanation method '" + std::string(tag) +
                      "' (expected CETE, GNNE or EXPN)");
}

Explanation explain(Method m, const RgcnModel& model, const HeteroGraph& g,
                    const Triple& target, const ExplainConfig& cfg) {
  switch (m) {
    case Method::kCete:
      return explain_cet(model, g, target, cfg);
    case Method::kGnne:
      return explain_mi_only(model, g, target, cfg);
    case Method::kExpn:
      return explain_counterfactual(model, g, target, cfg);
  }
  throw ArgumentError("unknown method");
}

}  // namespace cetx
