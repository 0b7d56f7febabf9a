// Copyright 2026 The Spikebar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spikebar/commands.hpp"

namespace {

// Flags beat config-file keys; a config file beats built-in defaults.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> data_dir;
  std::optional<std::string> out_dir;
  std::optional<std::string> rule;
  std::optional<std::string> mode;
  std::optional<int> epochs;
  std::optional<int> batch_size;
  std::optional<double> target_rate;
  std::optional<double> eta;
  std::optional<std::vector<int>> hidden;
};

spikebar::RunConfig build_config(const std::string& config_path,
                                 const Overrides& ov) {
  spikebar::RunConfig cfg;
  if (!config_path.empty()) cfg = spikebar::load_run_config(config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.data_dir) cfg.data.dir = *ov.data_dir;
  if (ov.out_dir) cfg.train.out_dir = *ov.out_dir;
  if (ov.rule) cfg.train.rule = *ov.rule;
  if (ov.mode) cfg.network.mode = *ov.mode;
  if (ov.epochs) cfg.train.epochs = *ov.epochs;
  if (ov.batch_size) cfg.train.batch_size = *ov.batch_size;
  if (ov.target_rate) cfg.train.target_rate_hz = *ov.target_rate;
  if (ov.eta) cfg.train.eta = *ov.eta;
  if (ov.hidden) cfg.network.hidden = *ov.hidden;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spikebar: event-driven training of spiking networks on a simulated "
      "memristive crossbar"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration file");
    cmd->add_option("--seed", ov.seed, "master seed");
    cmd->add_option("--data-dir", ov.data_dir, "dataset directory");
  };
  auto add_train_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", ov.out_dir,
                    "output directory for metrics and checkpoints");
    cmd->add_option("--epochs", ov.epochs, "total epochs to reach");
    cmd->add_option("--batch-size", ov.batch_size,
                    "samples per programming batch");
    cmd->add_option("--update-rule", ov.rule,
                    "error-triggered | continuous");
    cmd->add_option("--target-rate", ov.target_rate,
                    "per-neuron error-event target rate in Hz");
    cmd->add_option("--eta", ov.eta, "continuous-rule learning rate");
    cmd->add_option("--hidden", ov.hidden, "layer widths, e.g. --hidden 200");
    cmd->add_option("--mode", ov.mode, "spiking | binary");
  };

  CLI::App* gen = app.add_subcommand(
      "gen-data", "generate the synthetic event dataset");
  add_common(gen);

  CLI::App* train_cmd =
      app.add_subcommand("train", "train a network and write a checkpoint");
  add_common(train_cmd);
  add_train_flags(train_cmd);
  bool resume = false;
  train_cmd->add_flag("--resume", resume,
                      "continue from the checkpoint in --out-dir");

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "score a checkpoint on a dataset manifest");
  std::string checkpoint_path;
  std::string manifest_path;
  eval_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file")
      ->required();
  eval_cmd->add_option("--manifest", manifest_path, "dataset manifest file")
      ->required();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep",
      "continuous baseline plus one run per target rate; emits a "
      "rate/accuracy/writes table");
  add_common(sweep_cmd);
  add_train_flags(sweep_cmd);
  std::vector<double> rates;
  sweep_cmd->add_option("--rates", rates,
                        "error-event target rates in Hz, e.g. --rates 50 10");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? spikebar::kExitOk : spikebar::kExitUsage;
  }

  return spikebar::run_command(
      [&]() -> int {
        if (gen->parsed())
          return spikebar::cmd_gen_data(build_config(config_path, ov),
                                        std::cout);
        if (train_cmd->parsed())
          return spikebar::cmd_train(build_config(config_path, ov), resume,
                                     std::cout);
        if (eval_cmd->parsed())
          return spikebar::cmd_eval(checkpoint_path, manifest_path,
                                    std::cout);
        return spikebar::cmd_sweep(build_config(config_path, ov), rates,
                                   std::cout);
      },
      std::cerr);
}
