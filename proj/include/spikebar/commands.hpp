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

#ifndef SPIKEBAR_COMMANDS_HPP_
#define SPIKEBAR_COMMANDS_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "spikebar/config.hpp"

namespace spikebar {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad flags, bad config, bad values
inline constexpr int kExitRuntime = 2;  // I/O failures, corrupt files

// Maps exceptions from `body` onto exit codes, printing the message to `err`.
// Contract violations are usage errors; everything else is a runtime error.
int run_command(const std::function<int()>& body, std::ostream& err);

// Generates the train and test splits under cfg.data.dir and prints counts.
int cmd_gen_data(const RunConfig& cfg, std::ostream& out);

// Trains for cfg.train.epochs total epochs, writing metrics and a checkpoint
// under cfg.train.out_dir. With `resume`, continues from an existing
// checkpoint (its network spec wins; cfg supplies the new epoch target and
// paths) and appends to the metrics file.
int cmd_train(const RunConfig& cfg, bool resume, std::ostream& out);

// Scores a checkpoint on a dataset manifest. Pure: touches no network state,
// appends one record to the metrics file next to the checkpoint.
int cmd_eval(const std::filesystem::path& checkpoint_path,
             const std::filesystem::path& manifest_path, std::ostream& out);

// Runs the continuous baseline plus one error-triggered run per target rate,
// all from the same seed and data, and emits a rate/accuracy/writes table
// (stdout and <out_dir>/sweep.csv).
int cmd_sweep(const RunConfig& cfg, const std::vector<double>& rates,
              std::ostream& out);

}  // namespace spikebar

#endif  // SPIKEBAR_COMMANDS_HPP_
