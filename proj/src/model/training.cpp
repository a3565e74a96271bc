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

#include "cetx/model/training.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cetx/errors.hpp"
#include "cetx/log.hpp"
#include "cetx/numerics/adam.hpp"
#include "cetx/numerics/kernels.hpp"

namespace cetx {

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("train.epochs must be >= 1");
  if (negative_ratio < 1) throw ConfigError("train.negative_ratio must be >= 1");
  if (layers < 1) throw ConfigError("train.layers must be >= 1");
  if (embedding_dim < 1) throw ConfigError("train.embedding_dim must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be > 0");
  if (!(l2 >= 0.0)) throw ConfigError("train.l2 must be >= 0");
  if (!(edge_dropout >= 0.0 && edge_dropout < 1.0)) {
    throw ConfigError("train.edge_dropout must lie in [0, 1)");
  }
}

std::vector<Triple> sample_negatives(const HeteroGraph& known,
                                     std::span<const Triple> positives, std::size_t ratio,
                                     std::mt19937_64& rng) {
  if (ratio < 1) throw ArgumentError("negative ratio must be >= 1");
  constexpr int kMaxDraws = 1000;
  std::vector<Triple> out;
  out.reserve(positives.size() * ratio);
  std::bernoulli_distribution coin(0.5);
  for (const Triple& p : positives) {
    for (std::size_t k = 0; k < ratio; ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxDraws && !placed; ++attempt) {
        Triple c = p;
        const bool corrupt_head = coin(rng);
        NodeId& slot = corrupt_head ? c.head : c.tail;
        const std::size_t pool =
            slot.kind == NodeKind::kCellLine ? known.cell_count() : known.drug_count();
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(pool - 1));
        slot.index = pick(rng);
        if (is_similarity(c.rel) && c.head == c.tail) continue;
        if (known.contains(c)) continue;
        out.push_back(c);
        placed = true;
      }
      if (!placed) {
        throw SamplingError("could not corrupt " + p.str() + " after " +
                            std::to_string(kMaxDraws) + " draws");
      }
    }
  }
  return out;
}

std::vector<Triple> sample_negatives(const HeteroGraph& known,
                                     std::span<const Triple> positives, std::size_t ratio,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_negatives(known, positives, ratio, rng);
}

double training_loss(const RgcnModel& model, const HeteroGraph& g, const MessageGraph& mg,
                     std::span<const Triple> positives, std::span<const Triple> negatives,
                     double l2, RgcnModel* grad) {
  const auto& k = simd::active();
  ForwardCache cache;
  const Matrix emb = forward(model, g, mg, {}, grad != nullptr ? &cache : nullptr);
  const std::size_t dim = model.output_dim();
  const double n = static_cast<double>(positives.size() + negatives.size());
  Matrix d_emb;
  Matrix* d_rel = nullptr;
  if (grad != nullptr) {
    d_emb = Matrix(emb.rows(), dim);
    d_rel = &grad->relation_vectors;
  }
  double loss = 0.0;
  auto score = [&](const Triple& t, double label) {
    const std::size_t h = mg.local_of(g.node_index(t.head));
    const std::size_t tl = mg.local_of(g.node_index(t.tail));
    const std::size_t r = rel_index(t.rel);
    const double* eh = emb.row(h).data();
    const double* et = emb.row(tl).data();
    const double* rv = model.relation_vectors.row(r).data();
    const double logit = k.dot3(eh, rv, et, dim);
    loss += label > 0.5 ? softplus(-logit) : softplus(logit);
    if (grad != nullptr) {
      const double dlogit = (sigmoid(logit) - label) / n;
      k.axpy_mul(dlogit, rv, et, d_emb.row(h).data(), dim);
      k.axpy_mul(dlogit, rv, eh, d_emb.row(tl).data(), dim);
      k.axpy_mul(dlogit, eh, et, d_rel->row(r).data(), dim);
    }
  };
  for (const Triple& t : positives) score(t, 1.0);
  for (const Triple& t : negatives) score(t, 0.0);
  loss /= n;
  if (grad != nullptr) backward(model, g, mg, {}, cache, d_emb, grad, false);
  if (l2 > 0.0) {
    auto params = model.parameters();
    std::vector<Matrix*> grads;
    if (grad != nullptr) grads = grad->parameters();
    for (std::size_t p = 0; p < params.size(); ++p) {
      auto v = params[p]->values();
      loss += l2 * k.dot(v.data(), v.data(), v.size());
      if (grad != nullptr) k.axpy(2.0 * l2, v.data(), grads[p]->values().data(), v.size());
    }
  }
  return loss;
}

double rank_auc(std::span<const double> positive_scores,
                std::span<const double> negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) {
    throw ArgumentError("AUC needs at least one positive and one negative score");
  }
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(positive_scores.size() + negative_scores.size());
  for (double s : positive_scores) items.push_back({s, true});
  for (double s : negative_scores) items.push_back({s, false});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.score < b.score; });
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    while (j < items.size() && items[j].score == items[i].score) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t q = i; q < j; ++q) {
      if (items[q].positive) rank_sum += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(positive_scores.size());
  const double nn = static_cast<double>(negative_scores.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double link_auc(const RgcnModel& model, const HeteroGraph& g,
                std::span<const Triple> positives, std::span<const Triple> negatives) {
  const Matrix emb = rgcn_forward(model, g);
  auto scores = [&](std::span<const Triple> ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (const Triple& t : ts) {
      out.push_back(link_logit(model, emb.row(g.node_index(t.head)), t.rel,
                               emb.row(g.node_index(t.tail))));
    }
    return out;
  };
  const auto pos = scores(positives);
  const auto neg = scores(negatives);
  return rank_auc(pos, neg);
}

RgcnModel train(const HeteroGraph& g, const TrainConfig& cfg, const TrainHooks& hooks) {
  cfg.validate();
  if (g.size() == 0) throw ValidationError("cannot train on an empty graph");

  ModelShape shape;
  shape.cell_count = g.cell_count();
  shape.drug_count = g.drug_count();
  const bool has_features = g.cell_features().cols() > 0 && g.drug_features().cols() > 0;
  switch (cfg.input) {
    case InputChoice::kAuto:
      shape.input = has_features ? InputMode::kProjected : InputMode::kFree;
      break;
    case InputChoice::kFree:
      shape.input = InputMode::kFree;
      break;
    case InputChoice::kProjected:
      if (!has_features) throw ConfigError("projected input requested but graph has no features");
      shape.input = InputMode::kProjected;
      break;
  }
  shape.cell_feature_dim = g.cell_features().cols();
  shape.drug_feature_dim = g.drug_features().cols();
  shape.dims.assign(cfg.layers + 1, cfg.embedding_dim);

  std::mt19937_64 rng(cfg.seed);
  RgcnModel model = init_model(shape, rng());
  const std::uint64_t sample_seed = rng();
  std::mt19937_64 sampler(sample_seed);

  AdamSettings settings;
  settings.lr = cfg.learning_rate;
  std::vector<AdamState> states;
  for (const Matrix* p : model.parameters()) states.emplace_back(p->size(), settings);

  const MessageGraph full_mg = message_graph(g);
  // held-out positives are known links, never drawn as negatives
  std::optional<HeteroGraph> known_all;
  if (!hooks.heldout_positives.empty()) {
    std::vector<Triple> all(g.triples().begin(), g.triples().end());
    all.insert(all.end(), hooks.heldout_positives.begin(), hooks.heldout_positives.end());
    known_all = g.with_triples(all);
  }
  const HeteroGraph& known = known_all ? *known_all : g;
  const std::span<const Triple> all_triples(g.triples());
  std::bernoulli_distribution withhold(cfg.edge_dropout);
  std::vector<Triple> kept;
  std::vector<Triple> held;
  std::size_t next_checkpoint = 0;
  std::vector<std::size_t> checkpoints = hooks.checkpoint_epochs;
  std::sort(checkpoints.begin(), checkpoints.end());

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::span<const Triple> positives = all_triples;
    MessageGraph epoch_mg;
    if (cfg.edge_dropout > 0.0) {
      kept.clear();
      held.clear();
      for (const Triple& t : all_triples) (withhold(sampler) ? held : kept).push_back(t);
      if (!held.empty()) {
        positives = held;
        epoch_mg = message_graph(g, kept);
      }
    }
    const MessageGraph& mg = positives.size() == all_triples.size() ? full_mg : epoch_mg;
    const auto negatives = sample_negatives(known, positives, cfg.negative_ratio, sampler);
    RgcnModel grad = model.zeros_like();
    const double loss =
        training_loss(model, g, mg, positives, negatives, cfg.l2, &grad);
    if (!std::isfinite(loss)) {
      throw NumericError("training loss is non-finite at epoch " + std::to_string(epoch) +
                         " (loss=" + std::to_string(loss) + ")");
    }
    auto params = model.parameters();
    auto grads = grad.parameters();
    for (std::size_t p = 0; p < params.size(); ++p) {
      states[p].apply(params[p]->values(), grads[p]->values());
    }
    model.epoch = epoch;

    const bool eval_now = hooks.eval_every > 0 &&
                          (epoch % hooks.eval_every == 0 || epoch == cfg.epochs) &&
                          !hooks.heldout_positives.empty() &&
                          !hooks.heldout_negatives.empty();
    if (hooks.on_log && (eval_now || epoch == 1 || epoch == cfg.epochs ||
                         (hooks.eval_every > 0 && epoch % hooks.eval_every == 0))) {
      TrainLogEntry entry{epoch, loss, std::nullopt};
      if (eval_now) {
        entry.auc = link_auc(model, g, hooks.heldout_positives, hooks.heldout_negatives);
      }
      hooks.on_log(entry);
    }
    log::debug("epoch {} loss {}", epoch, loss);
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == epoch) {
      if (hooks.on_checkpoint) hooks.on_checkpoint(model);
      ++next_checkpoint;
    }
  }
  return model;
}

}  // namespace cetx
