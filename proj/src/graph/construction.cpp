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

#include "cetx/graph/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cetx/errors.hpp"
#include "cetx/log.hpp"
#include "cetx/numerics/kernels.hpp"

namespace cetx {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(simd::dot(a, a));
  const double nb = std::sqrt(simd::dot(b, b));
  return simd::dot(a, b) / (na * nb);
}

SimilarityResult build_similarity_triples(const Matrix& features, NodeKind kind,
                                          const SimilarityMode& mode) {
  if (features.rows() < 2) {
    throw ValidationError("similarity construction needs at least 2 feature rows, got " +
                          std::to_string(features.rows()));
  }
  SimilarityResult result;
  std::vector<double> norms(features.rows());
  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    norms[i] = std::sqrt(simd::dot(features.row(i), features.row(i)));
    if (norms[i] == 0.0) {
      result.excluded_rows.push_back(i);
    } else {
      valid.push_back(i);
    }
  }
  if (!result.excluded_rows.empty()) {
    log::warn("similarity: {} zero-norm feature row(s) excluded from pairing",
              result.excluded_rows.size());
  }

  struct Pair {
    std::size_t a, b;
    double cosine;
  };
  std::vector<Pair> pairs;
  pairs.reserve(valid.size() * (valid.size() - (valid.empty() ? 0 : 1)) / 2);
  for (std::size_t x = 0; x < valid.size(); ++x) {
    for (std::size_t y = x + 1; y < valid.size(); ++y) {
      const std::size_t a = valid[x];
      const std::size_t b = valid[y];
      const double cos = simd::dot(features.row(a), features.row(b)) / (norms[a] * norms[b]);
      pairs.push_back({a, b, cos});
    }
  }

  std::vector<Pair> selected;
  if (const auto* t = std::get_if<SimilarityThreshold>(&mode)) {
    if (!(t->cosine >= -1.0 && t->cosine <= 1.0)) {
      throw ArgumentError("similarity threshold must lie in [-1, 1]");
    }
    result.threshold = t->cosine;
    for (const Pair& p : pairs) {
      if (p.cosine >= t->cosine) selected.push_back(p);
    }
  } else {
    const double f = std::get<SimilarityQuantile>(mode).fraction;
    if (!(f > 0.0 && f < 1.0)) throw ArgumentError("similarity quantile must lie in (0, 1)");
    const auto keep = static_cast<std::size_t>(std::llround(f * static_cast<double>(pairs.size())));
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return pairs[l].cosine > pairs[r].cosine;
    });
    order.resize(std::min(keep, order.size()));
    std::sort(order.begin(), order.end());
    result.threshold = 1.0;
    for (std::size_t i : order) {
      selected.push_back(pairs[i]);
      result.threshold = std::min(result.threshold, pairs[i].cosine);
    }
  }

  const RelKind rel = kind == NodeKind::kCellLine ? RelKind::kCsim : RelKind::kDsim;
  result.triples.reserve(2 * selected.size());
  for (const Pair& p : selected) {
    const NodeId a{kind, static_cast<std::uint32_t>(p.a)};
    const NodeId b{kind, static_cast<std::uint32_t>(p.b)};
    result.triples.push_back({a, rel, b});
    result.triples.push_back({b, rel, a});
  }
  return result;
}

PerDrugThresholds thresholds_from_records(std::span<const ResponseRecord> records) {
  PerDrugThresholds out;
  for (const ResponseRecord& r : records) {
    if (!r.threshold) continue;
    auto [it, inserted] = out.by_drug.emplace(r.drug, *r.threshold);
    if (!inserted && it->second != *r.threshold) {
      throw ConfigError("conflicting IC50 thresholds for drug " + r.drug.str());
    }
  }
  return out;
}

std::vector<Triple> binarize_responses(std::span<const ResponseRecord> records,
                                       const ThresholdSource& source) {
  std::vector<Triple> out;
  out.reserve(records.size());
  for (const ResponseRecord& r : records) {
    if (!std::isfinite(r.ic50)) {
      throw ValidationError("non-finite IC50 for " + r.cell.str() + " / " + r.drug.str());
    }
    double threshold = 0.0;
    if (const auto* g = std::get_if<GlobalThreshold>(&source)) {
      threshold = g->value;
    } else {
      const auto& map = std::get<PerDrugThresholds>(source).by_drug;
      auto it = map.find(r.drug);
      if (it == map.end()) {
        throw ConfigError("no IC50 threshold for drug " + r.drug.str());
      }
      threshold = it->second;
    }
    const RelKind rel = r.ic50 < threshold ? RelKind::kSen : RelKind::kRes;
    out.push_back({r.cell, rel, r.drug});
  }
  return out;
}

}  // namespace cetx
