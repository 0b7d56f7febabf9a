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

#include "spikebar/network.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace spikebar {

void NetworkSpec::validate() const {
  SB_CHECK_MSG(layer_sizes.size() >= 2,
               "need an input width and at least one trainable layer");
  for (int size : layer_sizes)
    SB_CHECK_MSG(size > 0, "layer sizes must be positive");
  SB_CHECK_MSG(n_classes >= 2, "need at least 2 classes");
  window.validate();
  crossbar.validate();
  SB_CHECK_MSG(dt_seconds > 0.0, "dt must be positive");
  SB_CHECK_MSG(theta0 > 0.0 && theta_min > 0.0, "theta must be positive");
  SB_CHECK_MSG(eta > 0.0, "eta must be positive");
  SB_CHECK_MSG(target_rate_hz >= 0.0, "target rate must be non-negative");
  SB_CHECK_MSG(decay_spread >= 0.0 && decay_spread < 1.0,
               "decay_spread out of range");
}

Network::Network(const NetworkSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n_layers = spec_.n_layers();
  layers_.reserve(n_layers);
  for (int l = 0; l < n_layers; ++l) {
    const int n_in = spec_.layer_sizes[l];
    const int n_out = spec_.layer_sizes[l + 1];

    Rng param_rng(mix_seed(spec_.param_seed, l));
    LayerParams params = LayerParams::randomized(
        n_in, n_out, spec_.alpha, spec_.beta, spec_.gamma, spec_.delta,
        spec_.decay_spread, param_rng);
    if (spec_.mode == NetworkMode::kBinaryEquivalence)
      params = binary_network_mode(std::move(params));

    CrossbarArray xbar(n_out, n_in, spec_.crossbar,
                       mix_seed(spec_.weight_seed, l));
    LocalErrorHead head =
        init_head(mix_seed(spec_.head_seed, l), spec_.n_classes, n_out);

    ThetaController controller;
    controller.theta = spec_.theta0;
    controller.theta_min = spec_.theta_min;
    controller.target_rate = spec_.target_rate_hz;
    controller.gain = spec_.controller_gain;
    controller.rate_tau = spec_.controller_tau;
    controller.validate();

    LayerState state = LayerState::zeros(params);
    layers_.push_back(Layer{std::move(params), std::move(state),
                            std::move(xbar), std::move(head), controller});
  }
}

void Network::reset_state() {
  for (Layer& layer : layers_) layer.state = LayerState::zeros(layer.params);
}

std::vector<LayerSnapshot> Network::forward_step(const SpikeVec& in_spikes) {
  SB_CHECK_MSG(static_cast<int>(in_spikes.size()) == spec_.layer_sizes[0],
               "input spike vector length != input width");
  std::vector<LayerSnapshot> snapshots;
  snapshots.reserve(layers_.size());

  const SpikeVec* input = &in_spikes;
  for (Layer& layer : layers_) {
    membrane_and_fire(layer.state, layer.xbar.effective_weight(),
                      layer.params);
    snapshots.push_back({layer.state.p, layer.state.u, layer.state.s});
    step_traces(layer.state, *input, layer.params);
    input = &snapshots.back().s;
  }
  return snapshots;
}

std::vector<StepMetrics> Network::learn_step(
    const std::vector<LayerSnapshot>& snapshots, const Vec& y_onehot,
    int step, const UpdateSink& sink) {
  SB_CHECK_MSG(snapshots.size() == layers_.size(),
               "snapshot count != layer count");
  std::vector<StepMetrics> metrics(layers_.size());

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Layer& layer = layers_[l];
    const LayerSnapshot& snap = snapshots[l];
    StepMetrics& m = metrics[l];

    m.loss = local_loss(snap.s, y_onehot, layer.head);
    const Vec err = local_error(snap.s, y_onehot, layer.head);

    std::vector<WeightUpdate> updates;
    if (spec_.update_rule == UpdateRule::kContinuous) {
      updates = continuous_update(err, snap.p, snap.u, spec_.window, spec_.eta);
    } else {
      const ErrorEncoding enc =
          encode_error(err, layer.controller.theta, step);
      m.events = static_cast<int>(enc.events.size());
      if (spec_.event_magnitude == EventMagnitude::kResidual) {
        updates = error_triggered_update_residual(enc.events, enc.e, snap.p,
                                                  snap.u, spec_.window,
                                                  layer.controller.theta);
      } else {
        updates = error_triggered_update(enc.events, snap.p, snap.u,
                                         spec_.window, layer.controller.theta);
      }
      controller_step(layer.controller, m.events, layer.params.n_out,
                      spec_.dt_seconds);
    }
    m.updates = static_cast<int>(updates.size());
    if (sink && !updates.empty()) sink(static_cast<int>(l), updates);
  }
  return metrics;
}

int Network::predict(const LabeledSample& sample) {
  SB_CHECK_MSG(sample.stream.n_channels == spec_.layer_sizes[0],
               "sample channel count != network input width");
  reset_state();
  const LocalErrorHead& readout = layers_.back().head;
  Vec accumulated(spec_.n_classes, 0.0);
  for (const SpikeVec& spikes : sample.stream.to_raster()) {
    const std::vector<LayerSnapshot> snaps = forward_step(spikes);
    const Vec scores = class_scores(snaps.back().s, readout);
    for (int k = 0; k < spec_.n_classes; ++k) accumulated[k] += scores[k];
  }
  reset_state();
  return static_cast<int>(std::max_element(accumulated.begin(),
                                           accumulated.end()) -
                          accumulated.begin());
}

double Network::evaluate(const std::vector<LabeledSample>& samples) {
  SB_CHECK_MSG(!samples.empty(), "cannot evaluate an empty dataset");
  int correct = 0;
  for (const LabeledSample& sample : samples)
    if (predict(sample) == sample.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

UpdateAccumulator::UpdateAccumulator(int n_out, int n_in)
    : n_out_(n_out),
      n_in_(n_in),
      sum_(static_cast<std::size_t>(n_out) * n_in, 0.0),
      touched_(static_cast<std::size_t>(n_out) * n_in, 0) {}

void UpdateAccumulator::add(const std::vector<WeightUpdate>& updates) {
  for (const WeightUpdate& up : updates) {
    SB_CHECK_MSG(up.row >= 0 && up.row < n_out_ && up.col >= 0 &&
                     up.col < n_in_,
                 "update index out of range");
    const std::size_t k = static_cast<std::size_t>(up.row) * n_in_ + up.col;
    sum_[k] += up.dw;
    if (!touched_[k]) {
      touched_[k] = 1;
      ++touched_count_;
    }
  }
}

std::vector<WeightUpdate> UpdateAccumulator::drain() {
  std::vector<WeightUpdate> out;
  out.reserve(touched_count_);
  for (int i = 0; i < n_out_; ++i) {
    for (int j = 0; j < n_in_; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n_in_ + j;
      if (touched_[k]) {
        out.push_back({i, j, sum_[k]});
        sum_[k] = 0.0;
        touched_[k] = 0;
      }
    }
  }
  touched_count_ = 0;
  return out;
}

struct MetricsWriter::Impl {
  std::ofstream out;
};

MetricsWriter::MetricsWriter(const std::string& path, bool append)
    : impl_(std::make_unique<Impl>()) {
  impl_->out.open(path, append ? std::ios::app : std::ios::trunc);
  if (!impl_->out)
    throw RuntimeError("cannot open metrics file " + path);
}

MetricsWriter::~MetricsWriter() = default;

void MetricsWriter::write_batch(const BatchRecord& r) {
  nlohmann::json line{{"type", "batch"},   {"epoch", r.epoch},
                      {"batch", r.batch},  {"layer", r.layer},
                      {"loss", r.loss},    {"events", r.events},
                      {"writes", r.writes}, {"theta", r.theta},
                      {"rate_estimate", r.rate_estimate}};
  impl_->out << line.dump() << "\n";
  if (!impl_->out) throw RuntimeError("metrics write failed");
}

void MetricsWriter::write_epoch(const EpochRecord& r) {
  nlohmann::json line{{"type", "epoch"},
                      {"epoch", r.epoch},
                      {"accuracy", r.accuracy},
                      {"total_writes", r.total_writes},
                      {"mean_event_rate", r.mean_event_rate},
                      {"theta", r.theta},
                      {"mean_loss", r.mean_loss}};
  impl_->out << line.dump() << "\n";
  impl_->out.flush();
  if (!impl_->out) throw RuntimeError("metrics write failed");
}

namespace {

Vec onehot(int label, int n_classes) {
  SB_CHECK_MSG(label >= 0 && label < n_classes, "label out of class range");
  Vec y(n_classes, 0.0);
  y[label] = 1.0;
  return y;
}

std::uint64_t network_total_writes(const Network& net) {
  std::uint64_t total = 0;
  for (int l = 0; l < net.n_layers(); ++l)
    total += net.layer(l).xbar.total_writes();
  return total;
}

}  // namespace

RunReport train(Network& net, const std::vector<LabeledSample>& train_set,
                const std::vector<LabeledSample>* eval_set,
                const TrainRunConfig& config, int start_epoch,
                std::uint64_t prior_events) {
  SB_CHECK_MSG(!train_set.empty(), "training set is empty");
  SB_CHECK_MSG(config.batch_size >= 1, "batch_size must be >= 1");
  SB_CHECK_MSG(config.epochs >= 0, "epochs must be non-negative");
  SB_CHECK_MSG(start_epoch >= 0 && start_epoch <= config.epochs,
               "start_epoch out of range");

  const NetworkSpec& spec = net.spec();
  const std::vector<LabeledSample>& eval_samples =
      eval_set ? *eval_set : train_set;

  std::unique_ptr<MetricsWriter> metrics;
  if (!config.metrics_path.empty())
    metrics = std::make_unique<MetricsWriter>(config.metrics_path,
                                              /*append=*/start_epoch > 0);

  RunReport report;
  report.total_events = prior_events;

  std::vector<UpdateAccumulator> accumulators;
  for (int l = 0; l < net.n_layers(); ++l)
    accumulators.emplace_back(net.layer(l).params.n_out,
                              net.layer(l).params.n_in);
  const Network::UpdateSink sink =
      [&accumulators](int l, const std::vector<WeightUpdate>& ups) {
        accumulators[static_cast<std::size_t>(l)].add(ups);
      };

  if (config.epochs == start_epoch) {
    // Evaluation-only run.
    EpochRecord record;
    record.epoch = start_epoch;
    record.accuracy = net.evaluate(eval_samples);
    record.total_writes = network_total_writes(net);
    record.mean_event_rate.assign(net.n_layers(), 0.0);
    for (int l = 0; l < net.n_layers(); ++l)
      record.theta.push_back(net.layer(l).controller.theta);
    if (metrics) metrics->write_epoch(record);
    report.epochs.push_back(record);
    report.final_accuracy = record.accuracy;
    report.total_writes = record.total_writes;
    return report;
  }

  std::vector<int> order(train_set.size());
  for (int epoch = start_epoch; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(mix_seed(spec.data_seed, 0xe90c + epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    std::vector<std::uint64_t> epoch_events(net.n_layers(), 0);
    std::uint64_t epoch_steps = 0;
    double epoch_loss_sum = 0.0;
    std::uint64_t epoch_loss_count = 0;

    int batch_index = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += config.batch_size, ++batch_index) {
      const std::size_t end =
          std::min(order.size(), begin + config.batch_size);

      std::vector<double> batch_loss(net.n_layers(), 0.0);
      std::vector<std::uint64_t> batch_events(net.n_layers(), 0);
      std::uint64_t batch_steps = 0;

      for (std::size_t k = begin; k < end; ++k) {
        const LabeledSample& sample = train_set[order[k]];
        SB_CHECK_MSG(sample.stream.n_channels == spec.layer_sizes[0],
                     "sample channel count != network input width");
        const Vec y = onehot(sample.label, spec.n_classes);
        net.reset_state();
        const std::vector<SpikeVec> raster = sample.stream.to_raster();
        for (int n = 0; n < sample.stream.n_steps; ++n) {
          const std::vector<LayerSnapshot> snaps = net.forward_step(raster[n]);
          const std::vector<StepMetrics> step_metrics =
              net.learn_step(snaps, y, n, sink);
          for (int l = 0; l < net.n_layers(); ++l) {
            batch_loss[l] += step_metrics[l].loss;
            batch_events[l] += step_metrics[l].events;
          }
          ++batch_steps;
        }
      }

      // Program the batch's accumulated updates, one write per touched
      // device.
      for (int l = 0; l < net.n_layers(); ++l) {
        const std::vector<WeightUpdate> programmed = accumulators[l].drain();
        net.layer(l).xbar.program(programmed);

        BatchRecord record;
        record.epoch = epoch;
        record.batch = batch_index;
        record.layer = l;
        record.loss = batch_steps > 0 ? batch_loss[l] / batch_steps : 0.0;
        record.events = batch_events[l];
        record.writes = programmed.size();
        record.theta = net.layer(l).controller.theta;
        record.rate_estimate = net.layer(l).controller.rate_estimate;
        if (metrics) metrics->write_batch(record);

        epoch_events[l] += batch_events[l];
        epoch_loss_sum += batch_loss[l];
        epoch_loss_count += batch_steps;
      }
      epoch_steps += batch_steps;
    }

    EpochRecord record;
    record.epoch = epoch + 1;
    record.accuracy = net.evaluate(eval_samples);
    record.total_writes = network_total_writes(net);
    record.mean_loss =
        epoch_loss_count > 0 ? epoch_loss_sum / epoch_loss_count : 0.0;
    for (int l = 0; l < net.n_layers(); ++l) {
      const double denominator = static_cast<double>(epoch_steps) *
                                 net.layer(l).params.n_out * spec.dt_seconds;
      record.mean_event_rate.push_back(
          denominator > 0.0 ? epoch_events[l] / denominator : 0.0);
      record.theta.push_back(net.layer(l).controller.theta);
      report.total_events += epoch_events[l];
    }
    if (metrics) metrics->write_epoch(record);
    report.epochs.push_back(record);
  }

  report.final_accuracy = report.epochs.back().accuracy;
  report.total_writes = network_total_writes(net);
  return report;
}

}  // namespace spikebar
