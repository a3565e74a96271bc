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

#include "cetx/evalmetrics/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cetx/errors.hpp"

namespace cetx {
namespace {

std::size_t hits(const Explanation& ex, const GroundTruthSet& gt, std::size_t n) {
  std::size_t tp = 0;
  const std::size_t limit = std::min(n, ex.ranked.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (gt.contains(ex.ranked[i].triple)) ++tp;
  }
  return tp;
}

std::set<Triple> top_set(const Explanation& ex, std::size_t k) {
  std::set<Triple> s;
  const std::size_t limit = std::min(k, ex.ranked.size());
  for (std::size_t i = 0; i < limit; ++i) s.insert(ex.ranked[i].triple);
  return s;
}

template <typename T>
std::optional<double> mean_of(const std::vector<T>& items, std::optional<double> T::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const T& item : items) {
    if (item.*field) {
      sum += *(item.*field);
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::optional<double> precision_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                     std::size_t k) {
  if (k == 0) throw ArgumentError("precision@k needs k >= 1");
  if (ex.ranked.empty()) return std::nullopt;
  const std::size_t denom = std::min(k, ex.ranked.size());
  return static_cast<double>(hits(ex, gt, k)) / static_cast<double>(denom);
}

std::optional<double> recall_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                  std::size_t k, std::size_t n) {
  if (k == 0) throw ArgumentError("recall@k needs k >= 1");
  if (k > n) throw ArgumentError("recall@k needs k <= n");
  if (gt.size() == 0) return std::nullopt;
  const std::size_t tp = hits(ex, gt, k);
  const std::size_t covered = hits(ex, gt, n);
  const std::size_t fn = gt.size() - covered;
  if (tp + fn == 0) return 0.0;  // GT surfaced only below rank k
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> recall_at_k(const Explanation& ex, const GroundTruthSet& gt,
                                  std::size_t k) {
  return recall_at_k(ex, gt, k, std::max(k, ex.ranked.size()));
}

double f1_at_k(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double stability(std::span<const Explanation> runs_a, std::span<const Explanation> runs_b,
                 std::size_t k) {
  if (k == 0) throw ArgumentError("stability needs k >= 1");
  std::map<Triple, const Explanation*> by_target;
  for (const Explanation& b : runs_b) by_target[b.target] = &b;
  std::vector<std::string> unmatched;
  std::set<Triple> matched;
  double total = 0.0;
  for (const Explanation& a : runs_a) {
    auto it = by_target.find(a.target);
    if (it == by_target.end()) {
      unmatched.push_back(a.target.str());
      continue;
    }
    if (it->second->method != a.method) {
      throw PairingError("method mismatch for " + a.target.str() + ": " + a.method + " vs " +
                         it->second->method);
    }
    matched.insert(a.target);
    const auto sa = top_set(a, k);
    const auto sb = top_set(*it->second, k);
    std::size_t common = 0;
    for (const Triple& t : sa) common += sb.contains(t) ? 1 : 0;
    total += static_cast<double>(common);
  }
  for (const Explanation& b : runs_b) {
    if (!matched.contains(b.target)) unmatched.push_back(b.target.str());
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& u : unmatched) list += (list.empty() ? "" : ", ") + u;
    throw PairingError("stability: unmatched targets: " + list);
  }
  if (runs_a.empty()) return 0.0;
  return total / static_cast<double>(runs_a.size());
}

std::optional<std::array<double, kNumRelations>> edge_type_distribution(
    std::span<const Explanation> explanations, std::size_t k) {
  if (k == 0) throw ArgumentError("edge type distribution needs k >= 1");
  std::array<std::size_t, kNumRelations> counts{};
  std::size_t total = 0;
  for (const Explanation& ex : explanations) {
    const std::size_t limit = std::min(k, ex.ranked.size());
    for (std::size_t i = 0; i < limit; ++i) {
      ++counts[rel_index(ex.ranked[i].triple.rel)];
      ++total;
    }
  }
  if (total == 0) return std::nullopt;
  std::array<double, kNumRelations> out{};
  for (std::size_t r = 0; r < kNumRelations; ++r) {
    out[r] = static_cast<double>(counts[r]) / static_cast<double>(total);
  }
  return out;
}

MetricsReport evaluate(std::span<const Explanation> explanations,
                       std::span<const GroundTruthSet> ground_truth, std::size_t k) {
  if (k == 0) throw ArgumentError("evaluation needs k >= 1");
  std::map<Triple, const GroundTruthSet*> gt_by_target;
  for (const GroundTruthSet& gt : ground_truth) gt_by_target[gt.target] = &gt;
  MetricsReport report;
  report.k = k;
  report.target_count = explanations.size();
  std::vector<std::string> unmatched;
  for (const Explanation& ex : explanations) {
    if (report.method.empty()) report.method = ex.method;
    auto it = gt_by_target.find(ex.target);
    if (it == gt_by_target.end()) {
      unmatched.push_back(ex.target.str());
      continue;
    }
    const GroundTruthSet& gt = *it->second;
    TargetMetrics tm;
    tm.target = ex.target;
    tm.gt_size = gt.size();
    tm.ranking_size = ex.ranked.size();
    tm.precision = precision_at_k(ex, gt, k);
    // empty rankings stay out of every aggregate
    if (!ex.ranked.empty()) tm.recall = recall_at_k(ex, gt, k);
    if (tm.precision && tm.recall) tm.f1 = f1_at_k(*tm.precision, *tm.recall);
    if (ex.ranked.empty()) ++report.empty_rankings;
    if (gt.size() == 0) ++report.empty_ground_truth;
    report.per_target.push_back(tm);
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& u : unmatched) list += (list.empty() ? "" : ", ") + u;
    throw PairingError("no ground truth for targets: " + list);
  }
  report.mean_precision = mean_of(report.per_target, &TargetMetrics::precision);
  report.mean_recall = mean_of(report.per_target, &TargetMetrics::recall);
  report.mean_f1 = mean_of(report.per_target, &TargetMetrics::f1);
  report.edge_types = edge_type_distribution(explanations, k);
  return report;
}

}  // namespace cetx
