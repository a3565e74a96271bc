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

#include "cetx/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include "cetx/errors.hpp"
#include "cetx/graph/io.hpp"
#include "cetx/hashing.hpp"

namespace cetx {

namespace {

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += io::format_double(values[i]);
  }
  return out;
}

std::vector<ConfigKey> build_keys() {
  const TrainConfig t;
  const ExplainConfig e;
  const BenchConfig b;
  auto num = [](double v) { return io::format_double(v); };
  std::vector<ConfigKey> keys = {
      {"bench.cells", std::to_string(b.cells), "cell lines in the synthetic graph"},
      {"bench.cluster_size", std::to_string(b.cluster_size), "nodes per similarity cluster"},
      {"bench.drugs", std::to_string(b.drugs), "drugs in the synthetic graph"},
      {"bench.feature_noise", num(b.feature_noise), "std-dev of feature noise"},
      {"bench.noise_res", num(b.noise_res), "random Res edge density"},
      {"bench.noise_sen", num(b.noise_sen), "random Sen edge density"},
      {"bench.target_relation", "sen", "planted target relation: sen, res or mixed"},
      {"bench.targets", std::to_string(b.targets), "planted targets"},
      {"eval.k", "10", "cut-off for precision, recall, F1 and stability"},
      {"eval.methods", "CETE,GNNE,EXPN", "explanation methods to evaluate"},
      {"eval.stability_epoch", "4000", "second checkpoint for stability (0 = off)"},
      {"explain.adam_beta1", num(e.adam_beta1), "mask Adam first-moment decay"},
      {"explain.adam_beta2", num(e.adam_beta2), "mask Adam second-moment decay"},
      {"explain.alpha", num(e.alpha), "linear size penalty"},
      {"explain.beta", num(e.beta), "quadratic size penalty"},
      {"explain.hops", "0", "neighbourhood radius (0 = layer count)"},
      {"explain.init_noise", num(e.init_noise), "std-dev of initial mask latents"},
      {"explain.iterations", std::to_string(e.iterations), "mask optimisation steps"},
      {"explain.lambda_entropy", num(e.lambda_entropy), "mask entropy weight"},
      {"explain.lambda_score", num(e.lambda_score), "structure score weight"},
      {"explain.learning_rate", num(e.learning_rate), "mask Adam learning rate"},
      {"explain.penalty_sign", "subtract", "subtract or add the size penalty"},
      {"explain.top_k", std::to_string(e.top_k), "triples kept per explanation"},
      {"explain.weights", join_doubles(e.weights), "edge-type weights Res,Sen,Dsim,Csim"},
      {"graph.cell_similarity", "threshold:0.9", "threshold:<cos> or quantile:<fraction>"},
      {"graph.drug_similarity", "threshold:0.9", "threshold:<cos> or quantile:<fraction>"},
      {"graph.ic50_threshold", "per_drug", "per_drug or a global IC50 cut"},
      {"paths.cell_features", "", "cell feature CSV (default <output>/cell_features.csv)"},
      {"paths.drug_features", "", "drug feature CSV (default <output>/drug_features.csv)"},
      {"paths.gt", "", "ground-truth JSONL for eval (default <output>/gt.jsonl)"},
      {"paths.heldout", "", "triples scored for AUC when folds = 0"},
      {"paths.output", "cetx_out", "artifact directory"},
      {"paths.responses", "", "response TSV (default <output>/responses.tsv)"},
      {"paths.targets", "", "triples to explain (default: test-fold predictions)"},
      {"run.seed", "0", "global seed"},
      {"train.all_folds", "false", "train every fold instead of train.fold only"},
      {"train.checkpoints", "4000,5000", "epochs at which checkpoints are written"},
      {"train.edge_dropout", num(t.edge_dropout), "per-epoch message-edge dropout"},
      {"train.embedding_dim", std::to_string(t.embedding_dim), "hidden and output width"},
      {"train.epochs", std::to_string(t.epochs), "training epochs"},
      {"train.eval_every", "100", "AUC logging interval (0 = off)"},
      {"train.fold", "0", "fold whose test part is explained"},
      {"train.folds", "1", "0 = no split, 1 = 80/20 split, k >= 2 = k-fold"},
      {"train.input", "auto", "auto, free or projected node input"},
      {"train.l2", num(t.l2), "L2 weight on all parameters"},
      {"train.layers", std::to_string(t.layers), "R-GCN layers"},
      {"train.learning_rate", num(t.learning_rate), "Adam learning rate"},
      {"train.negative_ratio", std::to_string(t.negative_ratio), "negatives per positive"},
      {"gt.bin_start", "10", "smallest GT size counted in the histogram"},
      {"gt.bin_width", "10", "histogram bin width"},
  };
  std::sort(keys.begin(), keys.end(),
            [](const ConfigKey& a, const ConfigKey& b) { return a.name < b.name; });
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t to_size(const std::string& key, const std::string& text) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    return io::parse_double(text);
  } catch (const ParseError&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (std::string_view part : io::split(text, ',')) {
    std::string item = trim(part);
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

SimilarityMode to_similarity(const std::string& key, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError(key + ": expected threshold:<cos> or quantile:<fraction>");
  }
  const std::string kind = text.substr(0, colon);
  const double v = to_double(key, text.substr(colon + 1));
  if (kind == "threshold") {
    if (!(v >= -1.0 && v <= 1.0)) throw ConfigError(key + ": cosine cut must lie in [-1, 1]");
    return SimilarityThreshold{v};
  }
  if (kind == "quantile") {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(key + ": quantile must lie in (0, 1)");
    return SimilarityQuantile{v};
  }
  throw ConfigError(key + ": unknown similarity mode '" + kind + "'");
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_keys();
  return keys;
}

RunConfig::RunConfig() {
  for (const ConfigKey& k : config_keys()) values_[k.name] = k.default_value;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second = trim(value);
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

RunConfig RunConfig::parse(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where() + "expected key = value");
    if (section.empty()) throw ConfigError(where() + "key outside of a section");
    const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  return parse(io::read_file(path), path.string());
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

std::string RunConfig::to_ini() const {
  std::string out;
  std::string section;
  for (const auto& [k, v] : values_) {
    const auto dot = k.find('.');
    const std::string s = k.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += '\n';
      out += "[" + s + "]\n";
      section = s;
    }
    out += k.substr(dot + 1) + " = " + v + "\n";
  }
  return out;
}

std::filesystem::path RunConfig::output_dir() const {
  const std::string& v = get("paths.output");
  if (v.empty()) throw ConfigError("paths.output must not be empty");
  return v;
}

std::filesystem::path RunConfig::input_path(const std::string& key,
                                            std::string_view fallback) const {
  const std::string& v = get(key);
  if (!v.empty()) return v;
  return output_dir() / std::string(fallback);
}

std::uint64_t RunConfig::seed() const { return to_size("run.seed", get("run.seed")); }

SimilarityMode RunConfig::cell_similarity() const {
  return to_similarity("graph.cell_similarity", get("graph.cell_similarity"));
}

SimilarityMode RunConfig::drug_similarity() const {
  return to_similarity("graph.drug_similarity", get("graph.drug_similarity"));
}

std::optional<double> RunConfig::global_ic50_threshold() const {
  const std::string& v = get("graph.ic50_threshold");
  if (v == "per_drug") return std::nullopt;
  const double t = to_double("graph.ic50_threshold", v);
  if (!std::isfinite(t)) throw ConfigError("graph.ic50_threshold must be finite");
  return t;
}

TrainConfig RunConfig::train() const {
  TrainConfig t;
  t.epochs = to_size("train.epochs", get("train.epochs"));
  t.learning_rate = to_double("train.learning_rate", get("train.learning_rate"));
  t.embedding_dim = to_size("train.embedding_dim", get("train.embedding_dim"));
  t.layers = to_size("train.layers", get("train.layers"));
  t.negative_ratio = to_size("train.negative_ratio", get("train.negative_ratio"));
  t.l2 = to_double("train.l2", get("train.l2"));
  t.edge_dropout = to_double("train.edge_dropout", get("train.edge_dropout"));
  t.seed = seed();
  const std::string& input = get("train.input");
  if (input == "auto") {
    t.input = InputChoice::kAuto;
  } else if (input == "free") {
    t.input = InputChoice::kFree;
  } else if (input == "projected") {
    t.input = InputChoice::kProjected;
  } else {
    throw ConfigError("train.input: expected auto, free or projected, got '" + input + "'");
  }
  t.validate();
  return t;
}

std::vector<std::size_t> RunConfig::checkpoint_epochs() const {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(get("train.checkpoints"))) {
    out.push_back(to_size("train.checkpoints", item));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  const std::size_t epochs = to_size("train.epochs", get("train.epochs"));
  for (std::size_t e : out) {
    if (e == 0 || e > epochs) {
      throw ConfigError("train.checkpoints: epoch " + std::to_string(e) + " outside 1.." +
                        std::to_string(epochs));
    }
  }
  if (out.empty() || out.back() != epochs) out.push_back(epochs);
  return out;
}

std::size_t RunConfig::eval_every() const {
  return to_size("train.eval_every", get("train.eval_every"));
}

std::size_t RunConfig::folds() const { return to_size("train.folds", get("train.folds")); }

bool RunConfig::all_folds() const {
  const std::string& v = get("train.all_folds");
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("train.all_folds: expected true or false, got '" + v + "'");
}

std::size_t RunConfig::fold() const {
  const std::size_t f = to_size("train.fold", get("train.fold"));
  const std::size_t n = std::max<std::size_t>(folds(), 1);
  if (f >= n) {
    throw ConfigError("train.fold = " + std::to_string(f) + " but only " + std::to_string(n) +
                      " fold(s) exist");
  }
  return f;
}

ExplainConfig RunConfig::explain() const {
  ExplainConfig e;
  const auto weights = split_list(get("explain.weights"));
  if (weights.size() != kNumRelations) {
    throw ConfigError("explain.weights: expected 4 comma-separated values");
  }
  for (std::size_t r = 0; r < kNumRelations; ++r) {
    e.weights[r] = to_double("explain.weights", weights[r]);
  }
  e.alpha = to_double("explain.alpha", get("explain.alpha"));
  e.beta = to_double("explain.beta", get("explain.beta"));
  e.lambda_score = to_double("explain.lambda_score", get("explain.lambda_score"));
  e.lambda_entropy = to_double("explain.lambda_entropy", get("explain.lambda_entropy"));
  const std::string& sign = get("explain.penalty_sign");
  if (sign == "subtract") {
    e.penalty_sign = PenaltySign::kSubtract;
  } else if (sign == "add") {
    e.penalty_sign = PenaltySign::kAdd;
  } else {
    throw ConfigError("explain.penalty_sign: expected subtract or add, got '" + sign + "'");
  }
  e.learning_rate = to_double("explain.learning_rate", get("explain.learning_rate"));
  e.adam_beta1 = to_double("explain.adam_beta1", get("explain.adam_beta1"));
  e.adam_beta2 = to_double("explain.adam_beta2", get("explain.adam_beta2"));
  e.iterations = to_size("explain.iterations", get("explain.iterations"));
  e.top_k = to_size("explain.top_k", get("explain.top_k"));
  e.init_noise = to_double("explain.init_noise", get("explain.init_noise"));
  const std::size_t hops = to_size("explain.hops", get("explain.hops"));
  if (hops > 0) e.hops = hops;
  e.seed = seed();
  e.validate();
  return e;
}

std::size_t RunConfig::eval_k() const {
  const std::size_t k = to_size("eval.k", get("eval.k"));
  if (k == 0) throw ConfigError("eval.k must be >= 1");
  return k;
}

std::vector<std::string> RunConfig::eval_methods() const {
  auto methods = split_list(get("eval.methods"));
  if (methods.empty()) throw ConfigError("eval.methods must name at least one method");
  for (const std::string& m : methods) {
    try {
      parse_method(m);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("eval.methods: ") + e.what());
    }
  }
  return methods;
}

std::size_t RunConfig::stability_epoch() const {
  return to_size("eval.stability_epoch", get("eval.stability_epoch"));
}

std::size_t RunConfig::gt_bin_width() const {
  const std::size_t w = to_size("gt.bin_width", get("gt.bin_width"));
  if (w == 0) throw ConfigError("gt.bin_width must be >= 1");
  return w;
}

std::size_t RunConfig::gt_bin_start() const {
  return to_size("gt.bin_start", get("gt.bin_start"));
}

BenchConfig RunConfig::bench() const {
  BenchConfig b;
  b.seed = seed();
  b.cells = to_size("bench.cells", get("bench.cells"));
  b.drugs = to_size("bench.drugs", get("bench.drugs"));
  b.cluster_size = to_size("bench.cluster_size", get("bench.cluster_size"));
  b.targets = to_size("bench.targets", get("bench.targets"));
  b.noise_sen = to_double("bench.noise_sen", get("bench.noise_sen"));
  b.noise_res = to_double("bench.noise_res", get("bench.noise_res"));
  b.feature_noise = to_double("bench.feature_noise", get("bench.feature_noise"));
  const std::string& rel = get("bench.target_relation");
  if (rel == "sen") {
    b.target_relation = TargetRelation::kSen;
  } else if (rel == "res") {
    b.target_relation = TargetRelation::kRes;
  } else if (rel == "mixed") {
    b.target_relation = TargetRelation::kMixed;
  } else {
    throw ConfigError("bench.target_relation: expected sen, res or mixed, got '" + rel + "'");
  }
  b.validate();
  return b;
}

void RunConfig::validate() const {
  output_dir();
  seed();
  cell_similarity();
  drug_similarity();
  global_ic50_threshold();
  train();
  checkpoint_epochs();
  eval_every();
  all_folds();
  fold();
  explain();
  eval_k();
  eval_methods();
  stability_epoch();
  gt_bin_width();
  gt_bin_start();
  bench();
}

}  // namespace cetx
