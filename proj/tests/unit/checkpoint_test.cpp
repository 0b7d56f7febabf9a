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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using namespace spikebar;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spikebar-ckpt-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int counter;
};
int TempDir::counter = 0;

NetworkSpec toy_spec() {
  NetworkSpec spec;
  spec.layer_sizes = {8, 6, 5};
  spec.n_classes = 2;
  spec.param_seed = 12;
  spec.weight_seed = 13;
  spec.head_seed = 14;
  spec.data_seed = 15;
  return spec;
}

std::vector<LabeledSample> toy_dataset(std::uint64_t seed) {
  std::vector<LabeledSample> out;
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < 5; ++k) {
      Vec rates(8, 0.0);
      for (int j = 0; j < 4; ++j) rates[c * 4 + j] = 0.5;
      LabeledSample s;
      s.stream = poisson_encode(rates, 20, mix_seed(seed, c * 100 + k));
      s.label = c;
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Trains in place for [start_epoch, total_epochs) and reports the run.
RunReport train_span(Network& net, const std::vector<LabeledSample>& data,
                     int start_epoch, int total_epochs,
                     std::uint64_t prior_events = 0) {
  TrainRunConfig tc;
  tc.epochs = total_epochs;
  return train(net, data, nullptr, tc, start_epoch, prior_events);
}

void check_networks_equal(const Network& a, const Network& b) {
  REQUIRE(a.n_layers() == b.n_layers());
  for (int l = 0; l < a.n_layers(); ++l) {
    const Network::Layer& la = a.layer(l);
    const Network::Layer& lb = b.layer(l);
    CHECK(la.xbar.conductance() == lb.xbar.conductance());
    CHECK(la.xbar.write_counts() == lb.xbar.write_counts());
    CHECK(la.xbar.total_writes() == lb.xbar.total_writes());
    CHECK(la.head.j.a == lb.head.j.a);
    CHECK(la.head.h.a == lb.head.h.a);
    CHECK(la.head.omega.a == lb.head.omega.a);
    CHECK(la.controller.theta == lb.controller.theta);
    CHECK(la.controller.rate_estimate == lb.controller.rate_estimate);
    CHECK(la.params.alpha == lb.params.alpha);
    CHECK(la.params.beta == lb.params.beta);
    CHECK(la.params.gamma == lb.params.gamma);
  }
}

}  // namespace

TEST_SUITE("checkpoint") {

TEST_CASE("a snapshot rebuilds the network it came from") {
  Network net(toy_spec());
  const auto data = toy_dataset(3);
  const RunReport report = train_span(net, data, 0, 2);

  const Checkpoint ckpt = make_checkpoint(net, 2, report.total_events);
  CHECK(ckpt.epochs_completed == 2);
  CHECK(ckpt.total_events == report.total_events);

  const Network restored = ckpt.to_network();
  check_networks_equal(net, restored);
  // Transient traces are not part of a checkpoint.
  for (double p : restored.layer(0).state.p) CHECK(p == 0.0);
}

TEST_CASE("save and load round-trip through disk bit-exactly") {
  TempDir tmp;
  Network net(toy_spec());
  const auto data = toy_dataset(4);
  const RunReport report = train_span(net, data, 0, 2);

  const fs::path path = tmp.path / "ckpt.json";
  save_checkpoint(path, make_checkpoint(net, 2, report.total_events));
  const Checkpoint loaded = load_checkpoint(path);

  CHECK(loaded.epochs_completed == 2);
  CHECK(loaded.total_events == report.total_events);
  CHECK(loaded.spec.layer_sizes == toy_spec().layer_sizes);
  CHECK(loaded.spec.param_seed == toy_spec().param_seed);
  CHECK(loaded.spec.data_seed == toy_spec().data_seed);
  check_networks_equal(net, loaded.to_network());
}

TEST_CASE("resuming from a checkpoint matches an uninterrupted run") {
  const auto data = toy_dataset(5);

  Network straight(toy_spec());
  const RunReport full = train_span(straight, data, 0, 4);

  TempDir tmp;
  const fs::path path = tmp.path / "mid.json";
  Network first_half(toy_spec());
  const RunReport half = train_span(first_half, data, 0, 2);
  save_checkpoint(path, make_checkpoint(first_half, 2, half.total_events));

  const Checkpoint ckpt = load_checkpoint(path);
  Network resumed = ckpt.to_network();
  const RunReport rest = train_span(resumed, data, ckpt.epochs_completed, 4,
                                    ckpt.total_events);

  check_networks_equal(straight, resumed);
  CHECK(rest.final_accuracy == full.final_accuracy);
  CHECK(rest.total_writes ==
        full.total_writes);  // counters live in the crossbars
  CHECK(rest.total_events == full.total_events);
  REQUIRE(rest.epochs.size() == 2);
  REQUIRE(full.epochs.size() == 4);
  CHECK(rest.epochs[0].accuracy == full.epochs[2].accuracy);
  CHECK(rest.epochs[1].accuracy == full.epochs[3].accuracy);
  CHECK(rest.epochs[1].theta == full.epochs[3].theta);
}

TEST_CASE("checkpoints preserve every network spec knob") {
  NetworkSpec spec = toy_spec();
  spec.mode = NetworkMode::kBinaryEquivalence;
  spec.update_rule = UpdateRule::kContinuous;
  spec.event_magnitude = EventMagnitude::kResidual;
  spec.window = {-0.25, 0.75};
  spec.crossbar.model = UpdateModel::kSoftBound;
  spec.crossbar.pulse_levels = 128;
  spec.crossbar.write_noise_sigma = 0.02;
  spec.eta = 0.3;
  spec.theta0 = 0.7;
  Network net(spec);

  TempDir tmp;
  const fs::path path = tmp.path / "knobs.json";
  save_checkpoint(path, make_checkpoint(net, 0, 0));
  const Checkpoint loaded = load_checkpoint(path);

  CHECK(loaded.spec.mode == NetworkMode::kBinaryEquivalence);
  CHECK(loaded.spec.update_rule == UpdateRule::kContinuous);
  CHECK(loaded.spec.event_magnitude == EventMagnitude::kResidual);
  CHECK(loaded.spec.window.u_minus == -0.25);
  CHECK(loaded.spec.window.u_plus == 0.75);
  CHECK(loaded.spec.crossbar.model == UpdateModel::kSoftBound);
  CHECK(loaded.spec.crossbar.pulse_levels == 128);
  CHECK(loaded.spec.crossbar.write_noise_sigma == 0.02);
  CHECK(loaded.spec.eta == 0.3);
  CHECK(loaded.spec.theta0 == 0.7);
}

TEST_CASE("a missing file fails with a runtime error") {
  CHECK_THROWS_AS((void)load_checkpoint("/nonexistent/nowhere.json"),
                  RuntimeError);
}

TEST_CASE("malformed JSON fails with a runtime error") {
  TempDir tmp;
  const fs::path path = tmp.path / "garbage.json";
  std::ofstream(path) << "{not json at all";
  CHECK_THROWS_AS((void)load_checkpoint(path), RuntimeError);
}

TEST_CASE("an alien JSON document is rejected") {
  TempDir tmp;
  const fs::path path = tmp.path / "alien.json";
  std::ofstream(path) << "{\"hello\": 1}";
  CHECK_THROWS_AS((void)load_checkpoint(path), RuntimeError);
}

TEST_CASE("a future format version is refused, not misread") {
  TempDir tmp;
  const fs::path path = tmp.path / "future.json";
  Network net(toy_spec());
  save_checkpoint(path, make_checkpoint(net, 0, 0));

  nlohmann::json doc;
  {
    std::ifstream in(path);
    in >> doc;
  }
  doc["version"] = kCheckpointVersion + 1;
  std::ofstream(path) << doc.dump(2);

  try {
    (void)load_checkpoint(path);
    FAIL("expected a version error");
  } catch (const RuntimeError& e) {
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }
}

}  // TEST_SUITE("checkpoint")
