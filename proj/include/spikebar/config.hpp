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

#ifndef SPIKEBAR_CONFIG_HPP_
#define SPIKEBAR_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spikebar/data.hpp"
#include "spikebar/network.hpp"

namespace spikebar {

// One JSON file drives a whole run: dataset shape, network, crossbar and
// training schedule. Every field has a default, so {} is a valid config.
// Unknown keys are rejected with the offending dotted path; a typo should
// fail loudly, not silently fall back to a default.
struct RunConfig {
  std::uint64_t seed = 1;

  struct Data {
    std::string dir = "data";
    int classes = 10;
    int channels = 100;
    int steps = 100;
    int train_per_class = 100;
    int test_per_class = 20;
    int template_events = 300;
    int jitter = 2;
    double noise_rate = 0.005;
  } data;

  struct NetworkSection {
    std::vector<int> hidden = {200};
    double alpha = 0.7;
    double beta = 0.7;
    double gamma = 0.6;
    double delta = 0.5;
    double decay_spread = 0.1;
    double window_low = -1.5;
    double window_high = 1.5;
    double dt_seconds = 1e-3;
    double theta0 = 0.5;
    double theta_min = 1e-4;
    double controller_gain = 2e-4;
    double controller_tau = 0.05;
    std::string event_magnitude = "unit";  // unit | residual
    std::string mode = "spiking";          // spiking | binary
  } network;

  struct Crossbar {
    double g_min = 0.0;
    double g_max = 12.0;
    std::string model = "linear";  // linear | soft-bound
    double init_spread = 0.04;
    int pulse_levels = 0;
    double write_noise_sigma = 0.0;
  } crossbar;

  struct Train {
    std::string rule = "error-triggered";  // error-triggered | continuous
    double target_rate_hz = 10.0;
    double eta = 0.1;
    int batch_size = 1;
    int epochs = 8;
    std::string out_dir = "out";
  } train;

  // Cross-field validation beyond what the JSON schema can express.
  void validate() const;

  // The derived per-subsystem seeds keep one user-facing knob while giving
  // every consumer an independent stream.
  NetworkSpec to_network_spec() const;
  SyntheticSpec to_synthetic_spec(bool test_split) const;
  TrainRunConfig to_train_config() const;
};

// Parses JSON text. `origin` names the source (file path or "<inline>") in
// error messages. Throws ContractError on unknown keys or bad values.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

RunConfig load_run_config(const std::filesystem::path& path);

// Serializes with every field populated; the output re-parses to an equal
// config and doubles as schema documentation.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace spikebar

#endif  // SPIKEBAR_CONFIG_HPP_
