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

#include "spikebar/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spikebar/check.hpp"
#include "spikebar/rng.hpp"

namespace spikebar {

namespace {

using nlohmann::json;

// Reads one JSON object, tracking which keys were consumed so the leftovers
// can be reported as typos rather than silently ignored.
class Section {
 public:
  Section(const json& j, std::string path, const std::string& origin)
      : j_(j), path_(std::move(path)), origin_(origin) {
    if (!j_.is_object())
      fail(path_.empty() ? "config root" : "'" + path_ + "'",
           "must be a JSON object");
  }

  void get(const char* key, double& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) fail(dotted(key), "must be a number");
    out = v->get<double>();
  }

  void get(const char* key, int& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer()) fail(dotted(key), "must be an integer");
    out = v->get<int>();
  }

  void get(const char* key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_unsigned() && !v->is_number_integer())
      fail(dotted(key), "must be an integer");
    if (v->is_number_integer() && !v->is_number_unsigned() &&
        v->get<std::int64_t>() < 0)
      fail(dotted(key), "must be non-negative");
    out = v->get<std::uint64_t>();
  }

  void get(const char* key, std::string& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) fail(dotted(key), "must be a string");
    out = v->get<std::string>();
  }

  void get(const char* key, std::vector<int>& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array()) fail(dotted(key), "must be an array of integers");
    std::vector<int> parsed;
    for (const json& e : *v) {
      if (!e.is_number_integer())
        fail(dotted(key), "must be an array of integers");
      parsed.push_back(e.get<int>());
    }
    out = std::move(parsed);
  }

  // Returns the sub-object for `key`, or nullptr if absent.
  const json* child(const char* key) {
    const json* v = take(key);
    if (v && !v->is_object()) fail(dotted(key), "must be a JSON object");
    return v;
  }

  // Call after all gets: any unconsumed key is an error.
  void finish() {
    for (const auto& item : j_.items())
      if (!seen_.count(item.key()))
        fail("'" + dotted(item.key().c_str()) + "'", "is not a known key");
  }

 private:
  std::string dotted(const char* key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[noreturn]] void fail(const std::string& what,
                         const std::string& why) const {
    throw ContractError("config " + origin_ + ": " + what + " " + why);
  }

  const json& j_;
  std::string path_;
  const std::string& origin_;
  std::set<std::string> seen_;
};

UpdateModel crossbar_model_from_string(const std::string& s) {
  if (s == "linear") return UpdateModel::kLinear;
  if (s == "soft-bound") return UpdateModel::kSoftBound;
  throw ContractError("crossbar.model must be 'linear' or 'soft-bound', got '" +
                      s + "'");
}

NetworkMode mode_from_string(const std::string& s) {
  if (s == "spiking") return NetworkMode::kSpiking;
  if (s == "binary") return NetworkMode::kBinaryEquivalence;
  throw ContractError("network.mode must be 'spiking' or 'binary', got '" + s +
                      "'");
}

EventMagnitude magnitude_from_string(const std::string& s) {
  if (s == "unit") return EventMagnitude::kUnit;
  if (s == "residual") return EventMagnitude::kResidual;
  throw ContractError(
      "network.event_magnitude must be 'unit' or 'residual', got '" + s + "'");
}

UpdateRule rule_from_string(const std::string& s) {
  if (s == "error-triggered") return UpdateRule::kErrorTriggered;
  if (s == "continuous") return UpdateRule::kContinuous;
  throw ContractError(
      "train.rule must be 'error-triggered' or 'continuous', got '" + s + "'");
}

}  // namespace

void RunConfig::validate() const {
  SB_CHECK_MSG(data.classes >= 2, "data.classes must be at least 2");
  SB_CHECK_MSG(data.channels >= 1, "data.channels must be positive");
  SB_CHECK_MSG(data.steps >= 1, "data.steps must be positive");
  SB_CHECK_MSG(data.train_per_class >= 1,
               "data.train_per_class must be positive");
  SB_CHECK_MSG(data.test_per_class >= 0,
               "data.test_per_class must be non-negative");
  SB_CHECK_MSG(!network.hidden.empty(),
               "network.hidden needs at least one layer width");
  for (int w : network.hidden)
    SB_CHECK_MSG(w >= 1, "network.hidden widths must be positive");
  SB_CHECK_MSG(network.window_low < 0.0 && network.window_high > 0.0,
               "surrogate window must straddle the firing threshold");
  SB_CHECK_MSG(network.dt_seconds > 0.0, "network.dt_seconds must be positive");
  SB_CHECK_MSG(train.target_rate_hz > 0.0,
               "train.target_rate_hz must be positive");
  SB_CHECK_MSG(train.eta > 0.0, "train.eta must be positive");
  SB_CHECK_MSG(train.batch_size >= 1, "train.batch_size must be positive");
  SB_CHECK_MSG(train.epochs >= 0, "train.epochs must be non-negative");
  // Enum strings and the remaining numeric ranges are checked by the specs
  // they feed; building them surfaces those errors with the same wording.
  (void)to_network_spec();
  (void)to_synthetic_spec(false);
}

NetworkSpec RunConfig::to_network_spec() const {
  NetworkSpec spec;
  spec.layer_sizes.clear();
  spec.layer_sizes.push_back(data.channels);
  spec.layer_sizes.insert(spec.layer_sizes.end(), network.hidden.begin(),
                          network.hidden.end());
  spec.n_classes = data.classes;
  spec.param_seed = mix_seed(seed, 0xA1);
  spec.weight_seed = mix_seed(seed, 0xA2);
  spec.head_seed = mix_seed(seed, 0xA3);
  spec.data_seed = mix_seed(seed, 0xA4);
  spec.mode = mode_from_string(network.mode);
  spec.update_rule = rule_from_string(train.rule);
  spec.event_magnitude = magnitude_from_string(network.event_magnitude);
  spec.alpha = network.alpha;
  spec.beta = network.beta;
  spec.gamma = network.gamma;
  spec.delta = network.delta;
  spec.decay_spread = network.decay_spread;
  spec.window.u_minus = network.window_low;
  spec.window.u_plus = network.window_high;
  spec.dt_seconds = network.dt_seconds;
  spec.target_rate_hz = train.target_rate_hz;
  spec.theta0 = network.theta0;
  spec.theta_min = network.theta_min;
  spec.controller_gain = network.controller_gain;
  spec.controller_tau = network.controller_tau;
  spec.eta = train.eta;
  spec.crossbar.g_min = crossbar.g_min;
  spec.crossbar.g_max = crossbar.g_max;
  spec.crossbar.model = crossbar_model_from_string(crossbar.model);
  spec.crossbar.init_spread = crossbar.init_spread;
  spec.crossbar.pulse_levels = crossbar.pulse_levels;
  spec.crossbar.write_noise_sigma = crossbar.write_noise_sigma;
  spec.validate();
  return spec;
}

SyntheticSpec RunConfig::to_synthetic_spec(bool test_split) const {
  SyntheticSpec spec;
  spec.n_classes = data.classes;
  spec.n_channels = data.channels;
  spec.n_steps = data.steps;
  spec.samples_per_class =
      test_split ? data.test_per_class : data.train_per_class;
  spec.template_events = data.template_events;
  spec.jitter = data.jitter;
  spec.noise_rate = data.noise_rate;
  // Same seed for both splits: class templates are shared, and the offset
  // keeps the per-sample jitter streams disjoint.
  spec.seed = mix_seed(seed, 0xD5);
  spec.sample_offset = test_split ? data.train_per_class : 0;
  return spec;
}

TrainRunConfig RunConfig::to_train_config() const {
  TrainRunConfig tc;
  tc.batch_size = train.batch_size;
  tc.epochs = train.epochs;
  tc.metrics_path = (std::filesystem::path(train.out_dir) / "metrics.jsonl")
                        .string();
  tc.checkpoint_path =
      (std::filesystem::path(train.out_dir) / "checkpoint.json").string();
  return tc;
}

RunConfig parse_run_config(const std::string& text,
                           const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractError("config " + origin + ": " + e.what());
  }

  RunConfig cfg;
  Section root(doc, "", origin);
  root.get("seed", cfg.seed);

  if (const json* jd = root.child("data")) {
    Section s(*jd, "data", origin);
    s.get("dir", cfg.data.dir);
    s.get("classes", cfg.data.classes);
    s.get("channels", cfg.data.channels);
    s.get("steps", cfg.data.steps);
    s.get("train_per_class", cfg.data.train_per_class);
    s.get("test_per_class", cfg.data.test_per_class);
    s.get("template_events", cfg.data.template_events);
    s.get("jitter", cfg.data.jitter);
    s.get("noise_rate", cfg.data.noise_rate);
    s.finish();
  }

  if (const json* jn = root.child("network")) {
    Section s(*jn, "network", origin);
    s.get("hidden", cfg.network.hidden);
    s.get("alpha", cfg.network.alpha);
    s.get("beta", cfg.network.beta);
    s.get("gamma", cfg.network.gamma);
    s.get("delta", cfg.network.delta);
    s.get("decay_spread", cfg.network.decay_spread);
    s.get("window_low", cfg.network.window_low);
    s.get("window_high", cfg.network.window_high);
    s.get("dt_seconds", cfg.network.dt_seconds);
    s.get("theta0", cfg.network.theta0);
    s.get("theta_min", cfg.network.theta_min);
    s.get("controller_gain", cfg.network.controller_gain);
    s.get("controller_tau", cfg.network.controller_tau);
    s.get("event_magnitude", cfg.network.event_magnitude);
    s.get("mode", cfg.network.mode);
    s.finish();
  }

  if (const json* jx = root.child("crossbar")) {
    Section s(*jx, "crossbar", origin);
    s.get("g_min", cfg.crossbar.g_min);
    s.get("g_max", cfg.crossbar.g_max);
    s.get("model", cfg.crossbar.model);
    s.get("init_spread", cfg.crossbar.init_spread);
    s.get("pulse_levels", cfg.crossbar.pulse_levels);
    s.get("write_noise_sigma", cfg.crossbar.write_noise_sigma);
    s.finish();
  }

  if (const json* jt = root.child("train")) {
    Section s(*jt, "train", origin);
    s.get("rule", cfg.train.rule);
    s.get("target_rate_hz", cfg.train.target_rate_hz);
    s.get("eta", cfg.train.eta);
    s.get("batch_size", cfg.train.batch_size);
    s.get("epochs", cfg.train.epochs);
    s.get("out_dir", cfg.train.out_dir);
    s.finish();
  }

  root.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string());
}

std::string run_config_to_json(const RunConfig& cfg) {
  const json doc{
      {"seed", cfg.seed},
      {"data",
       {{"dir", cfg.data.dir},
        {"classes", cfg.data.classes},
        {"channels", cfg.data.channels},
        {"steps", cfg.data.steps},
        {"train_per_class", cfg.data.train_per_class},
        {"test_per_class", cfg.data.test_per_class},
        {"template_events", cfg.data.template_events},
        {"jitter", cfg.data.jitter},
        {"noise_rate", cfg.data.noise_rate}}},
      {"network",
       {{"hidden", cfg.network.hidden},
        {"alpha", cfg.network.alpha},
        {"beta", cfg.network.beta},
        {"gamma", cfg.network.gamma},
        {"delta", cfg.network.delta},
        {"decay_spread", cfg.network.decay_spread},
        {"window_low", cfg.network.window_low},
        {"window_high", cfg.network.window_high},
        {"dt_seconds", cfg.network.dt_seconds},
        {"theta0", cfg.network.theta0},
        {"theta_min", cfg.network.theta_min},
        {"controller_gain", cfg.network.controller_gain},
        {"controller_tau", cfg.network.controller_tau},
        {"event_magnitude", cfg.network.event_magnitude},
        {"mode", cfg.network.mode}}},
      {"crossbar",
       {{"g_min", cfg.crossbar.g_min},
        {"g_max", cfg.crossbar.g_max},
        {"model", cfg.crossbar.model},
        {"init_spread", cfg.crossbar.init_spread},
        {"pulse_levels", cfg.crossbar.pulse_levels},
        {"write_noise_sigma", cfg.crossbar.write_noise_sigma}}},
      {"train",
       {{"rule", cfg.train.rule},
        {"target_rate_hz", cfg.train.target_rate_hz},
        {"eta", cfg.train.eta},
        {"batch_size", cfg.train.batch_size},
        {"epochs", cfg.train.epochs},
        {"out_dir", cfg.train.out_dir}}}};
  return doc.dump(2) + "\n";
}

}  // namespace spikebar
