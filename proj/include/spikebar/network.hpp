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

#ifndef SPIKEBAR_NETWORK_HPP_
#define SPIKEBAR_NETWORK_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spikebar/crossbar.hpp"
#include "spikebar/data.hpp"
#include "spikebar/dynamics.hpp"
#include "spikebar/learning.hpp"
#include "spikebar/local_error.hpp"

namespace spikebar {

enum class UpdateRule { kErrorTriggered, kContinuous };
enum class NetworkMode { kSpiking, kBinaryEquivalence };
enum class EventMagnitude { kUnit, kResidual };

// Everything needed to rebuild a network deterministically.
struct NetworkSpec {
  // layer_sizes[0] is the input width; each following entry is a trainable
  // layer's neuron count. The last layer's local classifier is the readout.
  std::vector<int> layer_sizes;
  int n_classes = 10;

  std::uint64_t param_seed = 1;
  std::uint64_t weight_seed = 2;
  std::uint64_t head_seed = 3;
  std::uint64_t data_seed = 4;

  NetworkMode mode = NetworkMode::kSpiking;
  UpdateRule update_rule = UpdateRule::kErrorTriggered;
  EventMagnitude event_magnitude = EventMagnitude::kUnit;

  // Nominal decay constants, randomized per channel by +-decay_spread.
  double alpha = 0.6;
  double beta = 0.6;
  double gamma = 0.6;
  double delta = 0.5;
  double decay_spread = 0.1;

  SurrogateWindow window;
  double dt_seconds = 1e-3;

  // Error-triggered rule.
  double target_rate_hz = 10.0;
  double theta0 = 0.5;
  double theta_min = 1e-4;
  double controller_gain = 2e-4;
  double controller_tau = 0.05;

  // Continuous baseline.
  double eta = 0.1;

  CrossbarOptions crossbar;

  void validate() const;
  int n_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
};

// Per-step, per-layer view captured before the traces advance; the learning
// phase of the same step needs exactly these values.
struct LayerSnapshot {
  Vec p;
  Vec u;
  SpikeVec s;
};

struct StepMetrics {
  double loss = 0.0;
  int events = 0;
  int updates = 0;  // gated update entries emitted (not yet programmed)
};

struct BatchRecord {
  int epoch = 0;
  int batch = 0;
  int layer = 0;
  double loss = 0.0;          // mean local loss per step
  std::uint64_t events = 0;   // error events emitted in this batch
  std::uint64_t writes = 0;   // devices programmed at the batch boundary
  double theta = 0.0;
  double rate_estimate = 0.0;
};

struct EpochRecord {
  int epoch = 0;
  double accuracy = 0.0;
  std::uint64_t total_writes = 0;        // cumulative over the run
  std::vector<double> mean_event_rate;   // Hz per layer, this epoch
  std::vector<double> theta;             // per layer, end of epoch
  double mean_loss = 0.0;                // all layers, this epoch
};

struct RunReport {
  std::vector<EpochRecord> epochs;
  double final_accuracy = 0.0;
  std::uint64_t total_writes = 0;
  std::uint64_t total_events = 0;
};

struct TrainRunConfig {
  int batch_size = 1;
  int epochs = 10;
  std::string metrics_path;     // empty = no metrics file
  std::string checkpoint_path;  // empty = no checkpoint
};

class Network {
 public:
  explicit Network(const NetworkSpec& spec);

  const NetworkSpec& spec() const { return spec_; }
  int n_layers() const { return static_cast<int>(layers_.size()); }

  struct Layer {
    LayerParams params;
    LayerState state;
    CrossbarArray xbar;
    LocalErrorHead head;
    ThetaController controller;
  };
  Layer& layer(int l) { return layers_[l]; }
  const Layer& layer(int l) const { return layers_[l]; }

  void reset_state();

  // One simulation step: every layer fires from its current traces, snapshots
  // (p, u, s), then advances traces on this step's inputs (layer l consumes
  // layer l-1's spikes of the same step).
  std::vector<LayerSnapshot> forward_step(const SpikeVec& in_spikes);

  // Sink receiving this step's gated weight updates for one layer.
  using UpdateSink =
      std::function<void(int layer, const std::vector<WeightUpdate>&)>;

  // One learning step from the snapshots of the same forward step: local
  // errors, event encoding, gated updates into `sink`, controller advance.
  // Nothing is programmed here; programming happens at batch boundaries.
  std::vector<StepMetrics> learn_step(
      const std::vector<LayerSnapshot>& snapshots, const Vec& y_onehot,
      int step, const UpdateSink& sink);

  // Runs a sample with learning disabled and returns the predicted class:
  // argmax of the time-summed last-layer class scores (ties -> lowest index).
  int predict(const LabeledSample& sample);

  double evaluate(const std::vector<LabeledSample>& samples);

 private:
  NetworkSpec spec_;
  std::vector<Layer> layers_;
};

// Accumulates a batch's update entries per device; drained row-major at the
// batch boundary so one touched device costs exactly one write.
class UpdateAccumulator {
 public:
  UpdateAccumulator(int n_out, int n_in);
  void add(const std::vector<WeightUpdate>& updates);
  std::uint64_t touched() const { return touched_count_; }
  // Returns the summed updates (row-major over touched devices) and clears.
  std::vector<WeightUpdate> drain();

 private:
  int n_out_;
  int n_in_;
  Vec sum_;
  std::vector<std::uint8_t> touched_;
  std::uint64_t touched_count_ = 0;
};

// Streams batch/epoch records as JSON lines; append-only.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::string& path, bool append = false);
  ~MetricsWriter();
  void write_batch(const BatchRecord& record);
  void write_epoch(const EpochRecord& record);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs SGD over `train_set`. Per-epoch evaluation uses `eval_set` when given,
// else the training set. `start_epoch` > 0 continues a resumed run; metrics
// are appended in that case. Deterministic per spec seeds.
RunReport train(Network& net, const std::vector<LabeledSample>& train_set,
                const std::vector<LabeledSample>* eval_set,
                const TrainRunConfig& config, int start_epoch = 0,
                std::uint64_t prior_events = 0);

}  // namespace spikebar

#endif  // SPIKEBAR_NETWORK_HPP_
