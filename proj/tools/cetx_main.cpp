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

#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cetx/cli/commands.hpp"
#include "cetx/cli/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Edge-type-weighted explanations for R-GCN drug-response link prediction"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);

  std::map<std::string, std::string> overrides;
  for (const cetx::ConfigKey& key : cetx::config_keys()) {
    app.add_option_function<std::string>(
           "--" + key.name, [&overrides, name = key.name](const std::string& v) { overrides[name] = v; },
           key.help + " [" + key.default_value + "]")
        ->group("Config overrides");
  }

  auto* bench = app.add_subcommand("bench", "generate the synthetic benchmark");
  auto* build = app.add_subcommand("build", "build graph artifacts from features and responses");
  auto* train = app.add_subcommand("train", "train the predictor and write checkpoints");
  auto* explain = app.add_subcommand("explain", "explain target links with one method");
  std::string method;
  std::optional<std::size_t> epoch;
  explain->add_option("--method", method, "CETE, GNNE or EXPN")->required();
  explain->add_option("--epoch", epoch, "checkpoint epoch (default: train.epochs)");
  auto* gt = app.add_subcommand("gt", "build ground truth for the targets");
  auto* eval = app.add_subcommand("eval", "score explanations against ground truth");
  auto* show = app.add_subcommand("config", "print the effective configuration");

  CLI11_PARSE(app, argc, argv);

  return cetx::run_command([&] {
    cetx::RunConfig cfg = config_path.empty() ? cetx::RunConfig() : cetx::RunConfig::load(config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    cfg.validate();
    if (*show) {
      std::fputs(cfg.to_ini().c_str(), stdout);
    } else if (*bench) {
      cetx::cmd_bench(cfg);
    } else if (*build) {
      cetx::cmd_build(cfg);
    } else if (*train) {
      cetx::cmd_train(cfg);
    } else if (*explain) {
      cetx::cmd_explain(cfg, method, epoch);
    } else if (*gt) {
      cetx::cmd_gt(cfg);
    } else if (*eval) {
      cetx::cmd_eval(cfg);
    }
  });
}
