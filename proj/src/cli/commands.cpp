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

#include "cetx/cli/commands.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "json.hpp"

#include "cetx/cli/bench.hpp"
#include "cetx/errors.hpp"
#include "cetx/evalmetrics/metrics.hpp"
#include "cetx/evalmetrics/report.hpp"
#include "cetx/explainer/explainer.hpp"
#include "cetx/explainer/records.hpp"
#include "cetx/graph/construction.hpp"
#include "cetx/graph/io.hpp"
#include "cetx/groundtruth/groundtruth.hpp"
#include "cetx/groundtruth/records.hpp"
#include "cetx/hashing.hpp"
#include "cetx/log.hpp"
#include "cetx/model/checkpoint.hpp"
#include "cetx/model/training.hpp"

namespace cetx {

namespace fs = std::filesystem;

namespace {

constexpr int kTrainOnly = -1;

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

fs::path cell_features_path(const RunConfig& cfg) {
  return cfg.input_path("paths.cell_features", "cell_features.csv");
}
fs::path drug_features_path(const RunConfig& cfg) {
  return cfg.input_path("paths.drug_features", "drug_features.csv");
}
fs::path fold_dir(const RunConfig& cfg, std::size_t fold) {
  return cfg.output_dir() / ("fold" + std::to_string(fold));
}
fs::path checkpoint_path(const RunConfig& cfg, std::size_t fold, std::size_t epoch) {
  return fold_dir(cfg, fold) / ("checkpoint_" + std::to_string(epoch) + ".json");
}
fs::path explanation_path(const RunConfig& cfg, const std::string& method, std::size_t epoch) {
  return cfg.output_dir() / "explanations" / (method + "_e" + std::to_string(epoch) + ".jsonl");
}

std::size_t final_epoch(const RunConfig& cfg) { return cfg.train().epochs; }

void split_similarity(std::span<const Triple> sim, std::vector<Triple>& csim,
                      std::vector<Triple>& dsim) {
  for (const Triple& t : sim) {
    if (t.rel == RelKind::kCsim) {
      csim.push_back(t);
    } else if (t.rel == RelKind::kDsim) {
      dsim.push_back(t);
    } else {
      throw ValidationError("similarity file holds a response triple: " + t.str());
    }
  }
}

HeteroGraph load_full_graph(const RunConfig& cfg) {
  const fs::path out = cfg.output_dir();
  const auto response = io::read_triples(out / "triples.tsv");
  for (const Triple& t : response) {
    if (!is_response(t.rel)) {
      throw ValidationError("triples.tsv holds a similarity triple: " + t.str());
    }
  }
  std::vector<Triple> csim;
  std::vector<Triple> dsim;
  split_similarity(io::read_triples(out / "similarity.tsv"), csim, dsim);
  return assemble_graph(response, csim, dsim,
                        io::read_features(cell_features_path(cfg), NodeKind::kCellLine),
                        io::read_features(drug_features_path(cfg), NodeKind::kDrug));
}

std::vector<Triple> response_triples(const HeteroGraph& g) {
  std::vector<Triple> out;
  for (const Triple& t : g.triples()) {
    if (is_response(t.rel)) out.push_back(t);
  }
  return out;
}

// Test-fold label per response triple; kTrainOnly for triples never tested.
std::vector<int> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  std::vector<int> label(n, kTrainOnly);
  if (folds == 0 || n == 0) return label;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed ^ 0xf01d5eedULL);
  std::shuffle(order.begin(), order.end(), rng);
  if (folds == 1) {
    const auto test = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(n)));
    for (std::size_t p = 0; p < test; ++p) label[order[p]] = 0;
    return label;
  }
  if (folds > n) {
    throw ConfigError("train.folds = " + std::to_string(folds) + " exceeds the " +
                      std::to_string(n) + " response triples");
  }
  for (std::size_t p = 0; p < n; ++p) label[order[p]] = static_cast<int>(p * folds / n);
  return label;
}

std::string format_folds(std::span<const Triple> triples, std::span<const int> label) {
  std::string out;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    out += t.head.str() + '\t' + std::to_string(static_cast<int>(t.rel)) + '\t' +
           t.tail.str() + '\t' + (label[i] == kTrainOnly ? "-" : std::to_string(label[i])) +
           '\n';
  }
  return out;
}

std::vector<std::pair<Triple, int>> read_folds(const fs::path& path) {
  const std::string text = io::read_file(path);
  std::vector<std::pair<Triple, int>> out;
  std::size_t line_no = 0;
  for (std::string_view line : io::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto f = io::split(line, '\t');
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (f.size() != 4) throw ParseError(where + "expected 4 tab-separated fields");
    try {
      const auto triples = io::parse_triples(
          std::string(f[0]) + '\t' + std::string(f[1]) + '\t' + std::string(f[2]));
      int label = kTrainOnly;
      if (f[3] != "-") label = static_cast<int>(io::parse_double(f[3]));
      out.emplace_back(triples.at(0), label);
    } catch (const ValidationError& e) {
      throw ParseError(where + e.what());
    }
  }
  return out;
}

std::vector<Triple> test_triples(const RunConfig& cfg, std::size_t fold) {
  std::vector<Triple> out;
  for (const auto& [t, label] : read_folds(cfg.output_dir() / "folds.tsv")) {
    if (label == static_cast<int>(fold)) out.push_back(t);
  }
  return out;
}

HeteroGraph without(const HeteroGraph& full, std::span<const Triple> removed) {
  if (removed.empty()) return full;
  std::vector<Triple> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  std::vector<Triple> kept;
  kept.reserve(full.size());
  for (const Triple& t : full.triples()) {
    if (!std::binary_search(drop.begin(), drop.end(), t)) kept.push_back(t);
  }
  return full.with_triples(kept);
}

RgcnModel load_model(const RunConfig& cfg, std::size_t epoch) {
  const fs::path path = checkpoint_path(cfg, cfg.fold(), epoch);
  if (!fs::exists(path)) {
    throw ValidationError("no checkpoint at " + path.string() + " (run train first)");
  }
  RgcnModel model = load_checkpoint(path);
  if (model.config_hash != cfg.hash()) {
    log::warn("{} was trained under config {}, current config is {}", path.string(),
              hash_hex(model.config_hash), hash_hex(cfg.hash()));
  }
  return model;
}

}  // namespace

std::string graph_manifest(const HeteroGraph& g, std::uint64_t config_hash) {
  nlohmann::json rel = nlohmann::json::object();
  for (RelKind r : kAllRelations) rel[std::string(rel_name(r))] = g.count(r);
  nlohmann::json j = {{"config_hash", hash_hex(config_hash)},
                      {"cells", g.cell_count()},
                      {"drugs", g.drug_count()},
                      {"triples", g.size()},
                      {"relations", rel}};
  return dump(j);
}

void cmd_bench(const RunConfig& cfg) {
  const BenchData data = generate_bench(cfg.bench(), cfg.cell_similarity(), cfg.drug_similarity());
  const fs::path out = cfg.output_dir();
  const std::uint64_t h = cfg.hash();
  io::write_file(out / "cell_features.csv", io::format_features(data.cell_features, NodeKind::kCellLine));
  io::write_file(out / "drug_features.csv", io::format_features(data.drug_features, NodeKind::kDrug));
  io::write_file(out / "responses.tsv", io::format_responses(data.responses));
  io::write_file(out / "bench_targets.tsv", io::format_triples(data.targets));
  io::write_file(out / "answer_key.jsonl", format_ground_truth(data.answer_key, h));
  io::write_file(out / "bench_manifest.json", graph_manifest(data.graph, h));
  log::info("bench: {} nodes, {} triples, {} planted targets", data.graph.node_count(),
            data.graph.size(), data.targets.size());
}

void cmd_build(const RunConfig& cfg) {
  const fs::path responses_path = cfg.input_path("paths.responses", "responses.tsv");
  const auto records = io::read_responses(responses_path);
  if (records.empty()) {
    throw ValidationError(responses_path.string() + ": no response records");
  }
  Matrix cell_features = io::read_features(cell_features_path(cfg), NodeKind::kCellLine);
  Matrix drug_features = io::read_features(drug_features_path(cfg), NodeKind::kDrug);

  ThresholdSource thresholds = PerDrugThresholds{};
  if (const auto global = cfg.global_ic50_threshold()) {
    thresholds = GlobalThreshold{*global};
  } else {
    thresholds = thresholds_from_records(records);
  }
  const auto response = binarize_responses(records, thresholds);
  const auto csim =
      build_similarity_triples(cell_features, NodeKind::kCellLine, cfg.cell_similarity());
  const auto dsim =
      build_similarity_triples(drug_features, NodeKind::kDrug, cfg.drug_similarity());
  log::info("build: cell cosine cut {}, drug cosine cut {}", csim.threshold, dsim.threshold);

  const HeteroGraph g = assemble_graph(response, csim.triples, dsim.triples,
                                       std::move(cell_features), std::move(drug_features));
  if (g.duplicates_dropped() > 0) {
    log::warn("build: dropped {} duplicate triples", g.duplicates_dropped());
  }
  std::vector<Triple> similarity;
  for (const Triple& t : g.triples()) {
    if (is_similarity(t.rel)) similarity.push_back(t);
  }
  const fs::path out = cfg.output_dir();
  io::write_file(out / "triples.tsv", io::format_triples(response_triples(g)));
  io::write_file(out / "similarity.tsv", io::format_triples(similarity));
  io::write_file(out / "manifest.json", graph_manifest(g, cfg.hash()));
}

HeteroGraph load_fold_graph(const RunConfig& cfg) {
  const HeteroGraph full = load_full_graph(cfg);
  if (cfg.folds() == 0) return full;
  return without(full, test_triples(cfg, cfg.fold()));
}

std::vector<Triple> resolve_targets(const RunConfig& cfg, const HeteroGraph& fold_graph) {
  const std::string& explicit_path = cfg.get("paths.targets");
  if (!explicit_path.empty()) {
    auto targets = io::read_triples(explicit_path);
    for (const Triple& t : targets) {
      if (!is_response(t.rel)) {
        throw ValidationError(explicit_path + ": target " + t.str() + " is not a response triple");
      }
      if (!fold_graph.has_node(t.head) || !fold_graph.has_node(t.tail)) {
        throw LookupError(explicit_path + ": target " + t.str() + " names an unknown node");
      }
    }
    return targets;
  }
  if (cfg.folds() == 0) return {};
  const auto candidates = test_triples(cfg, cfg.fold());
  if (candidates.empty()) return {};
  const RgcnModel model = load_model(cfg, final_epoch(cfg));
  const Matrix emb = rgcn_forward(model, fold_graph);
  std::vector<Triple> out;
  for (const Triple& t : candidates) {
    if (link_probability(model, fold_graph, emb, t) > 0.5) out.push_back(t);
  }
  return out;
}

void cmd_train(const RunConfig& cfg) {
  const TrainConfig tcfg = cfg.train();
  const std::uint64_t h = cfg.hash();
  const HeteroGraph full = load_full_graph(cfg);
  const auto responses = response_triples(full);
  const auto label = assign_folds(responses.size(), cfg.folds(), cfg.seed());
  io::write_file(cfg.output_dir() / "folds.tsv", format_folds(responses, label));

  const std::size_t fold_count = std::max<std::size_t>(cfg.folds(), 1);
  std::vector<std::size_t> to_train;
  if (cfg.all_folds()) {
    to_train.resize(fold_count);
    std::iota(to_train.begin(), to_train.end(), std::size_t{0});
  } else {
    to_train.push_back(cfg.fold());
  }

  for (std::size_t f : to_train) {
    std::vector<Triple> test;
    for (std::size_t i = 0; i < responses.size(); ++i) {
      if (label[i] == static_cast<int>(f)) test.push_back(responses[i]);
    }
    if (cfg.folds() == 0 && !cfg.get("paths.heldout").empty()) {
      test = io::read_triples(cfg.get("paths.heldout"));
    }
    const HeteroGraph g = cfg.folds() == 0 ? full : without(full, test);

    TrainHooks hooks;
    if (!test.empty()) {
      hooks.heldout_positives = test;
      hooks.heldout_negatives = sample_negatives(full, test, 1, cfg.seed() ^ 0xa0cULL);
      hooks.eval_every = cfg.eval_every();
    }
    hooks.checkpoint_epochs = cfg.checkpoint_epochs();
    const fs::path dir = fold_dir(cfg, f);
    hooks.on_checkpoint = [&](const RgcnModel& m) {
      RgcnModel copy = m;
      copy.config_hash = h;
      save_checkpoint(copy, checkpoint_path(cfg, f, m.epoch));
    };
    std::string log_csv = "epoch,loss,auc\n";
    std::optional<double> last_auc;
    hooks.on_log = [&](const TrainLogEntry& e) {
      log_csv += std::to_string(e.epoch) + "," + io::format_double(e.loss) + ",";
      if (e.auc) {
        log_csv += io::format_double(*e.auc);
        last_auc = e.auc;
      }
      log_csv += "\n";
      log::info("fold {} epoch {} loss {:.5f}", f, e.epoch, e.loss);
    };
    train(g, tcfg, hooks);
    io::write_file(dir / "train_log.csv", log_csv);

    nlohmann::json summary = {{"config_hash", hash_hex(h)},
                              {"fold", f},
                              {"train_triples", g.size()},
                              {"test_triples", test.size()},
                              {"checkpoints", hooks.checkpoint_epochs}};
    summary["final_auc"] = last_auc ? nlohmann::json(*last_auc) : nlohmann::json(nullptr);
    io::write_file(dir / "train_manifest.json", dump(summary));
  }
}

void cmd_explain(const RunConfig& cfg, const std::string& method,
                 std::optional<std::size_t> epoch) {
  const Method m = parse_method(method);
  const std::size_t e = epoch.value_or(final_epoch(cfg));
  const ExplainConfig ecfg = cfg.explain();
  const HeteroGraph g = load_fold_graph(cfg);
  const RgcnModel model = load_model(cfg, e);
  const auto targets = resolve_targets(cfg, g);
  const fs::path out = explanation_path(cfg, method_tag(m), e);
  if (targets.empty()) {
    log::warn("explain: empty target list, writing an empty {}", out.string());
  }
  std::vector<Explanation> exs;
  exs.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    exs.push_back(explain(m, model, g, targets[i], ecfg));
    exs.back().predictor_epoch = e;
    log::info("explain {}: {}/{} {}", method_tag(m), i + 1, targets.size(), targets[i].str());
  }
  io::write_file(out, format_explanations(exs, cfg.hash()));
}

void cmd_gt(const RunConfig& cfg) {
  const HeteroGraph g = load_fold_graph(cfg);
  const auto targets = resolve_targets(cfg, g);
  std::vector<GroundTruthSet> sets;
  std::vector<std::size_t> sizes;
  sets.reserve(targets.size());
  for (const Triple& t : targets) {
    sets.push_back(build_ground_truth(g, t));
    sizes.push_back(sets.back().size());
  }
  const fs::path out = cfg.output_dir();
  io::write_file(out / "gt.jsonl", format_ground_truth(sets, cfg.hash()));
  io::write_file(out / "gt_histogram.csv",
                 format_histogram(gt_distribution(sizes, cfg.gt_bin_width(), cfg.gt_bin_start())));
}

void cmd_eval(const RunConfig& cfg) {
  const std::size_t k = cfg.eval_k();
  const std::size_t e = final_epoch(cfg);
  const std::size_t se = cfg.stability_epoch();
  const auto gt = read_ground_truth(cfg.input_path("paths.gt", "gt.jsonl"));
  std::vector<MetricsReport> reports;
  nlohmann::json list = nlohmann::json::array();
  for (const std::string& tag : cfg.eval_methods()) {
    const std::string method = method_tag(parse_method(tag));
    const auto exs = read_explanations(explanation_path(cfg, method, e));
    MetricsReport report = evaluate(exs, gt, k);
    if (se > 0 && se != e) {
      const fs::path other = explanation_path(cfg, method, se);
      if (fs::exists(other)) {
        report.stability = stability(exs, read_explanations(other), k);
      } else {
        log::warn("eval: {} missing, stability for {} not computed", other.string(), method);
      }
    }
    list.push_back(report_to_json(report, cfg.hash()));
    reports.push_back(std::move(report));
  }
  const fs::path out = cfg.output_dir();
  io::write_file(out / "report.json",
                 dump({{"config_hash", hash_hex(cfg.hash())}, {"reports", list}}));
  io::write_file(out / "summary.csv", format_summary_csv(reports));
}

int run_command(const std::function<void()>& fn) {
  try {
    fn();
    return 0;
  } catch (const NumericError& e) {
    log::error("{}", e.what());
    return 2;
  } catch (const ValidationError& e) {
    log::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    log::error("{}", e.what());
    return 1;
  }
}

}  // namespace cetx
