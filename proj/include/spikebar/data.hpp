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

#ifndef SPIKEBAR_DATA_HPP_
#define SPIKEBAR_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spikebar/matrix.hpp"

namespace spikebar {

// One input spike: channel fires at a discrete step.
struct SpikeEvent {
  int step = 0;
  int channel = 0;

  friend auto operator<=>(const SpikeEvent&, const SpikeEvent&) = default;
};

// Time-ordered event list over a fixed (n_steps x n_channels) window, at most
// one event per (step, channel).
struct EventStream {
  std::vector<SpikeEvent> events;
  int n_channels = 0;
  int n_steps = 0;

  void validate() const;
  // Sorts by (step, channel) and collapses duplicates.
  void canonicalize();
  // Dense {0,1} raster, one SpikeVec per step.
  std::vector<SpikeVec> to_raster() const;
};

struct LabeledSample {
  EventStream stream;
  int label = 0;
};

// On-disk sample format: three `key=value` header lines (n_channels, n_steps,
// label) followed by one `step,channel` line per event in canonical order.
LabeledSample read_sample(const std::filesystem::path& path);
void write_sample(const std::filesystem::path& path,
                  const LabeledSample& sample);

// A dataset is a manifest file (lines `relative_path,label`) next to its
// sample files. Labels in the manifest must match the sample headers.
std::vector<LabeledSample> load_dataset(
    const std::filesystem::path& manifest_path);
// Writes samples plus `<name>.manifest` under dir; returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& dir,
                                    const std::string& name,
                                    const std::vector<LabeledSample>& samples);

// Bernoulli rate coding: channel j fires at each step with probability
// rates[j]. Every rate must lie in [0, 1]. Deterministic per seed.
EventStream poisson_encode(const Vec& rates, int n_steps, std::uint64_t seed);

struct SyntheticSpec {
  int n_classes = 10;
  int n_channels = 100;
  int n_steps = 100;
  int samples_per_class = 100;
  // Anchor events per class template.
  int template_events = 300;
  // Each anchor's step is jittered uniformly in [-jitter, +jitter] per sample.
  int jitter = 2;
  // Background Bernoulli noise probability per (step, channel).
  double noise_rate = 0.005;
  std::uint64_t seed = 1;
  // First per-class sample index. Splits drawn from the same seed share the
  // class templates; a disjoint index range keeps their samples disjoint.
  int sample_offset = 0;

  void validate() const;
};

// Desk-scale spatiotemporal classification set: each class is a fixed random
// event template; samples are jittered copies with background noise, shuffled
// across classes. Deterministic per seed.
std::vector<LabeledSample> make_synthetic_dataset(const SyntheticSpec& spec);

}  // namespace spikebar

#endif  // SPIKEBAR_DATA_HPP_
