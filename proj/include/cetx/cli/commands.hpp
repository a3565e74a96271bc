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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cetx/cli/config.hpp"
#include "cetx/graph/hetero_graph.hpp"

namespace cetx {

// Artifact layout under paths.output:
//
//   bench:   cell_features.csv drug_features.csv responses.tsv
//            bench_targets.tsv answer_key.jsonl bench_manifest.json
//   build:   triples.tsv similarity.tsv manifest.json
//   train:   folds.tsv fold<f>/checkpoint_<epoch>.json fold<f>/train_log.csv
//            fold<f>/train_manifest.json
//   explain: explanations/<METHOD>_e<epoch>.jsonl
//   gt:      gt.jsonl gt_histogram.csv
//   eval:    report.json summary.csv

// Relation counts and node counts as pretty-printed JSON (trailing newline).
std::string graph_manifest(const HeteroGraph& g, std::uint64_t config_hash);

void cmd_bench(const RunConfig& cfg);
void cmd_build(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
// `epoch` defaults to train.epochs.
void cmd_explain(const RunConfig& cfg, const std::string& method,
                 std::optional<std::size_t> epoch = std::nullopt);
void cmd_gt(const RunConfig& cfg);
void cmd_eval(const RunConfig& cfg);

// Graph from the build artifacts, minus the test part of train.fold.
HeteroGraph load_fold_graph(const RunConfig& cfg);
// paths.targets when set, else the fold's test responses the final
// checkpoint scores above 0.5.
std::vector<Triple> resolve_targets(const RunConfig& cfg, const HeteroGraph& fold_graph);

// Runs `fn` and maps errors to exit codes: 0 ok, 1 validation, 2 numeric.
// Anything else is reported and mapped to 1.
int run_command(const std::function<void()>& fn);

}  // namespace cetx
