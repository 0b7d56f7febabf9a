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

#ifndef SPIKEBAR_CHECKPOINT_HPP_
#define SPIKEBAR_CHECKPOINT_HPP_

#include <filesystem>

#include "spikebar/network.hpp"

namespace spikebar {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  NetworkSpec spec;
  int epochs_completed = 0;
  std::uint64_t total_events = 0;

  // Rebuilt network carrying the stored conductances, write counters, heads
  // and controller states.
  Network to_network() const;

  struct LayerStateSnapshot {
    LayerParams params;
    Mat g;
    std::vector<std::uint32_t> write_counts;
    std::uint64_t total_writes = 0;
    Mat j, h, omega;
    double theta = 0.0;
    double rate_estimate = 0.0;
  };
  std::vector<LayerStateSnapshot> layers;
};

// Captures everything needed to continue training the network later.
Checkpoint make_checkpoint(const Network& net, int epochs_completed,
                           std::uint64_t total_events);

// JSON container with an explicit version field; numbers round-trip exactly.
void save_checkpoint(const std::filesystem::path& path,
                     const Checkpoint& checkpoint);

// Throws RuntimeError on missing files, malformed JSON or a version mismatch.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace spikebar

#endif  // SPIKEBAR_CHECKPOINT_HPP_
