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

#ifndef SPIKEBAR_CROSSBAR_HPP_
#define SPIKEBAR_CROSSBAR_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "spikebar/learning.hpp"
#include "spikebar/matrix.hpp"
#include "spikebar/rng.hpp"

namespace spikebar {

// How a requested weight change maps onto a conductance change.
//   kLinear:    dG = dW, then clip to [g_min, g_max].
//   kSoftBound: update efficacy shrinks linearly as the device approaches the
//               bound it is moving towards, so G converges to the bound
//               asymptotically instead of clipping into it.
enum class UpdateModel { kLinear, kSoftBound };

struct CrossbarOptions {
  double g_min = 0.0;
  double g_max = 1.0;
  UpdateModel model = UpdateModel::kLinear;
  // Devices start uniform in g_ref +- init_spread*(g_max - g_min).
  double init_spread = 0.25;
  // When > 0, dG is quantized to this many programming levels across the
  // conductance range (pulse-count discretization). 0 = continuous.
  int pulse_levels = 0;
  // When > 0, each dG is multiplied by a lognormal draw exp(N(0, sigma)).
  double write_noise_sigma = 0.0;

  void validate() const;
};

struct WriteStats {
  std::uint64_t total_writes = 0;
  std::uint32_t per_device_max = 0;
  // Bucket k counts devices with write count in [2^k, 2^(k+1)); bucket 0 also
  // excludes untouched devices, reported separately.
  std::vector<std::uint64_t> histogram;
  std::uint64_t untouched_devices = 0;
};

// One memristive array in the unbalanced single-device realization: each
// weight is one conductance against the common reference g_ref at the middle
// of the range, w_ij = g_ij - g_ref. Tracks a per-device write counter; each
// programmed device costs one write regardless of magnitude.
class CrossbarArray {
 public:
  CrossbarArray(int n_out, int n_in, const CrossbarOptions& options,
                std::uint64_t seed);

  int n_out() const { return n_out_; }
  int n_in() const { return n_in_; }
  double g_ref() const { return 0.5 * (options_.g_min + options_.g_max); }
  const CrossbarOptions& options() const { return options_; }

  // W with w_ij = g_ij - g_ref.
  Mat effective_weight() const;

  // u_i = sum_j (g_ij - g_ref) * p_j. Same arithmetic path as inference
  // through effective_weight(), bit for bit.
  Vec vmm(const Vec& p) const;

  // Applies one programming operation per entry: moves the conductance by the
  // requested weight change under the configured update model, clips to the
  // bounds and increments that device's write counter.
  void program(std::span<const WeightUpdate> updates);

  WriteStats write_stats() const;

  // Serialization access. set_* validate bounds/shape.
  const Mat& conductance() const { return g_; }
  const std::vector<std::uint32_t>& write_counts() const {
    return write_counts_;
  }
  std::uint64_t total_writes() const { return total_writes_; }
  void restore(const Mat& g, const std::vector<std::uint32_t>& write_counts,
               std::uint64_t total_writes);

 private:
  int n_out_;
  int n_in_;
  CrossbarOptions options_;
  Mat g_;
  std::vector<std::uint32_t> write_counts_;
  std::uint64_t total_writes_ = 0;
  Rng noise_rng_;
};

}  // namespace spikebar

#endif  // SPIKEBAR_CROSSBAR_HPP_
