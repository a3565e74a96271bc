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

#include "cetx/evalmetrics/report.hpp"

#include "cetx/explainer/records.hpp"
#include "cetx/graph/io.hpp"
#include "cetx/hashing.hpp"

namespace cetx {

using nlohmann::json;

namespace {

json optional_value(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_field(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string();
}

}  // namespace

json report_to_json(const MetricsReport& report, std::uint64_t config_hash) {
  json targets = json::array();
  for (const TargetMetrics& t : report.per_target) {
    targets.push_back(json{{"target", triple_to_json(t.target)},
                           {"precision", optional_value(t.precision)},
                           {"recall", optional_value(t.recall)},
                           {"f1", optional_value(t.f1)},
                           {"gt_size", t.gt_size},
                           {"ranking_size", t.ranking_size}});
  }
  json types = nullptr;
  if (report.edge_types) {
    types = json{{"Res", (*report.edge_types)[0]},
                 {"Sen", (*report.edge_types)[1]},
                 {"Dsim", (*report.edge_types)[2]},
                 {"Csim", (*report.edge_types)[3]}};
  }
  return json{{"method", report.method},
              {"k", report.k},
              {"config_hash", hash_hex(config_hash)},
              {"target_count", report.target_count},
              {"empty_rankings", report.empty_rankings},
              {"empty_ground_truth", report.empty_ground_truth},
              {"precision", optional_value(report.mean_precision)},
              {"recall", optional_value(report.mean_recall)},
              {"f1", optional_value(report.mean_f1)},
              {"stability", optional_value(report.stability)},
              {"edge_types", types},
              {"per_target", targets}};
}

std::string format_summary_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "method,k,precision,recall,f1,stability,prop_res,prop_sen,prop_dsim,prop_csim\n";
  for (const MetricsReport& r : reports) {
    out += r.method + ',' + std::to_string(r.k) + ',' + optional_field(r.mean_precision) + ',' +
           optional_field(r.mean_recall) + ',' + optional_field(r.mean_f1) + ',' +
           optional_field(r.stability);
    for (std::size_t i = 0; i < kNumRelations; ++i) {
      out += ',';
      if (r.edge_types) out += io::format_double((*r.edge_types)[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cetx
