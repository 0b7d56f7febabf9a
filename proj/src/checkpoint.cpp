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

#include "spikebar/checkpoint.hpp"

#include <fstream>

#include "json.hpp"

namespace spikebar {

namespace {

using nlohmann::json;

json mat_to_json(const Mat& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.a}};
}

Mat mat_from_json(const json& j) {
  Mat m(j.at("rows").get<int>(), j.at("cols").get<int>());
  m.a = j.at("data").get<Vec>();
  SB_CHECK_MSG(m.a.size() == static_cast<std::size_t>(m.rows) * m.cols,
               "matrix payload size mismatch");
  return m;
}

json spec_to_json(const NetworkSpec& s) {
  return json{
      {"layer_sizes", s.layer_sizes},
      {"n_classes", s.n_classes},
      {"param_seed", s.param_seed},
      {"weight_seed", s.weight_seed},
      {"head_seed", s.head_seed},
      {"data_seed", s.data_seed},
      {"mode", s.mode == NetworkMode::kSpiking ? "spiking" : "binary"},
      {"update_rule", s.update_rule == UpdateRule::kContinuous
                          ? "continuous"
                          : "error-triggered"},
      {"event_magnitude",
       s.event_magnitude == EventMagnitude::kUnit ? "unit" : "residual"},
      {"alpha", s.alpha},
      {"beta", s.beta},
      {"gamma", s.gamma},
      {"delta", s.delta},
      {"decay_spread", s.decay_spread},
      {"window", json{s.window.u_minus, s.window.u_plus}},
      {"dt_seconds", s.dt_seconds},
      {"target_rate_hz", s.target_rate_hz},
      {"theta0", s.theta0},
      {"theta_min", s.theta_min},
      {"controller_gain", s.controller_gain},
      {"controller_tau", s.controller_tau},
      {"eta", s.eta},
      {"crossbar",
       json{{"g_min", s.crossbar.g_min},
            {"g_max", s.crossbar.g_max},
            {"model", s.crossbar.model == UpdateModel::kLinear ? "linear"
                                                               : "soft-bound"},
            {"init_spread", s.crossbar.init_spread},
            {"pulse_levels", s.crossbar.pulse_levels},
            {"write_noise_sigma", s.crossbar.write_noise_sigma}}}};
}

NetworkSpec spec_from_json(const json& j) {
  NetworkSpec s;
  s.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
  s.n_classes = j.at("n_classes").get<int>();
  s.param_seed = j.at("param_seed").get<std::uint64_t>();
  s.weight_seed = j.at("weight_seed").get<std::uint64_t>();
  s.head_seed = j.at("head_seed").get<std::uint64_t>();
  s.data_seed = j.at("data_seed").get<std::uint64_t>();
  s.mode = j.at("mode").get<std::string>() == "binary"
               ? NetworkMode::kBinaryEquivalence
               : NetworkMode::kSpiking;
  s.update_rule = j.at("update_rule").get<std::string>() == "continuous"
                      ? UpdateRule::kContinuous
                      : UpdateRule::kErrorTriggered;
  s.event_magnitude = j.at("event_magnitude").get<std::string>() == "residual"
                          ? EventMagnitude::kResidual
                          : EventMagnitude::kUnit;
  s.alpha = j.at("alpha").get<double>();
  s.beta = j.at("beta").get<double>();
  s.gamma = j.at("gamma").get<double>();
  s.delta = j.at("delta").get<double>();
  s.decay_spread = j.at("decay_spread").get<double>();
  s.window.u_minus = j.at("window").at(0).get<double>();
  s.window.u_plus = j.at("window").at(1).get<double>();
  s.dt_seconds = j.at("dt_seconds").get<double>();
  s.target_rate_hz = j.at("target_rate_hz").get<double>();
  s.theta0 = j.at("theta0").get<double>();
  s.theta_min = j.at("theta_min").get<double>();
  s.controller_gain = j.at("controller_gain").get<double>();
  s.controller_tau = j.at("controller_tau").get<double>();
  s.eta = j.at("eta").get<double>();
  const json& xb = j.at("crossbar");
  s.crossbar.g_min = xb.at("g_min").get<double>();
  s.crossbar.g_max = xb.at("g_max").get<double>();
  s.crossbar.model = xb.at("model").get<std::string>() == "soft-bound"
                         ? UpdateModel::kSoftBound
                         : UpdateModel::kLinear;
  s.crossbar.init_spread = xb.at("init_spread").get<double>();
  s.crossbar.pulse_levels = xb.at("pulse_levels").get<int>();
  s.crossbar.write_noise_sigma = xb.at("write_noise_sigma").get<double>();
  s.validate();
  return s;
}

}  // namespace

Checkpoint make_checkpoint(const Network& net, int epochs_completed,
                           std::uint64_t total_events) {
  Checkpoint ckpt;
  ckpt.spec = net.spec();
  ckpt.epochs_completed = epochs_completed;
  ckpt.total_events = total_events;
  for (int l = 0; l < net.n_layers(); ++l) {
    const Network::Layer& layer = net.layer(l);
    Checkpoint::LayerStateSnapshot snap;
    snap.params = layer.params;
    snap.g = layer.xbar.conductance();
    snap.write_counts = layer.xbar.write_counts();
    snap.total_writes = layer.xbar.total_writes();
    snap.j = layer.head.j;
    snap.h = layer.head.h;
    snap.omega = layer.head.omega;
    snap.theta = layer.controller.theta;
    snap.rate_estimate = layer.controller.rate_estimate;
    ckpt.layers.push_back(std::move(snap));
  }
  return ckpt;
}

Network Checkpoint::to_network() const {
  Network net(spec);
  SB_CHECK_MSG(static_cast<int>(layers.size()) == net.n_layers(),
               "checkpoint layer count mismatch");
  for (int l = 0; l < net.n_layers(); ++l) {
    const LayerStateSnapshot& snap = layers[l];
    Network::Layer& layer = net.layer(l);
    layer.params = snap.params;
    layer.params.validate();
    layer.state = LayerState::zeros(layer.params);
    layer.xbar.restore(snap.g, snap.write_counts, snap.total_writes);
    SB_CHECK_MSG(snap.j.rows == layer.head.j.rows &&
                     snap.j.cols == layer.head.j.cols,
                 "checkpoint head shape mismatch");
    layer.head.j = snap.j;
    layer.head.h = snap.h;
    layer.head.omega = snap.omega;
    layer.controller.theta = snap.theta;
    layer.controller.rate_estimate = snap.rate_estimate;
    layer.controller.validate();
  }
  return net;
}

void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& ckpt) {
  json layers = json::array();
  for (const Checkpoint::LayerStateSnapshot& snap : ckpt.layers) {
    layers.push_back(
        json{{"alpha", snap.params.alpha},
             {"beta", snap.params.beta},
             {"gamma", snap.params.gamma},
             {"delta", snap.params.delta},
             {"n_in", snap.params.n_in},
             {"n_out", snap.params.n_out},
             {"binary_mode", snap.params.binary_mode},
             {"g", mat_to_json(snap.g)},
             {"write_counts", snap.write_counts},
             {"total_writes", snap.total_writes},
             {"j", mat_to_json(snap.j)},
             {"h", mat_to_json(snap.h)},
             {"omega", mat_to_json(snap.omega)},
             {"theta", snap.theta},
             {"rate_estimate", snap.rate_estimate}});
  }
  const json doc{{"format", "spikebar-checkpoint"},
                 {"version", kCheckpointVersion},
                 {"epochs_completed", ckpt.epochs_completed},
                 {"total_events", ckpt.total_events},
                 {"spec", spec_to_json(ckpt.spec)},
                 {"layers", layers}};

  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw RuntimeError("cannot write checkpoint " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw RuntimeError("checkpoint write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open checkpoint " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw RuntimeError("corrupt checkpoint " + path.string() + ": " +
                       e.what());
  }

  try {
    if (doc.at("format").get<std::string>() != "spikebar-checkpoint")
      throw RuntimeError("not a checkpoint file: " + path.string());
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion)
      throw RuntimeError("checkpoint version mismatch in " + path.string() +
                         ": file has version " + std::to_string(version) +
                         ", this build reads version " +
                         std::to_string(kCheckpointVersion));

    Checkpoint ckpt;
    ckpt.spec = spec_from_json(doc.at("spec"));
    ckpt.epochs_completed = doc.at("epochs_completed").get<int>();
    ckpt.total_events = doc.at("total_events").get<std::uint64_t>();
    for (const json& jl : doc.at("layers")) {
      Checkpoint::LayerStateSnapshot snap;
      snap.params.alpha = jl.at("alpha").get<Vec>();
      snap.params.beta = jl.at("beta").get<Vec>();
      snap.params.gamma = jl.at("gamma").get<Vec>();
      snap.params.delta = jl.at("delta").get<double>();
      snap.params.n_in = jl.at("n_in").get<int>();
      snap.params.n_out = jl.at("n_out").get<int>();
      snap.params.binary_mode = jl.at("binary_mode").get<bool>();
      snap.g = mat_from_json(jl.at("g"));
      snap.write_counts = jl.at("write_counts").get<std::vector<std::uint32_t>>();
      snap.total_writes = jl.at("total_writes").get<std::uint64_t>();
      snap.j = mat_from_json(jl.at("j"));
      snap.h = mat_from_json(jl.at("h"));
      snap.omega = mat_from_json(jl.at("omega"));
      snap.theta = jl.at("theta").get<double>();
      snap.rate_estimate = jl.at("rate_estimate").get<double>();
      ckpt.layers.push_back(std::move(snap));
    }
    return ckpt;
  } catch (const json::exception& e) {
    throw RuntimeError("corrupt checkpoint " + path.string() + ": " +
                       e.what());
  }
}

}  // namespace spikebar
