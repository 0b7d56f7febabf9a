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

#ifndef SPIKEBAR_LOCAL_ERROR_HPP_
#define SPIKEBAR_LOCAL_ERROR_HPP_

#include <cstdint>

#include "spikebar/matrix.hpp"

namespace spikebar {

// Per-layer local classifier and its feedback path. j (C x n_out) is the fixed
// random readout; feedback runs through h (n_out x C) with h = j^T scaled
// elementwise by a fixed draw omega ~ N(1, 1/2), i.e. feedback alignment
// around the exact transpose. Both matrices are immutable after init.
struct LocalErrorHead {
  Mat j;
  Mat h;
  Mat omega;  // n_out x C; h.at(i,k) == j.at(k,i) * omega.at(i,k)
  std::uint64_t seed = 0;
  int n_classes = 0;
  int n_out = 0;
};

// Builds a head. j entries are i.i.d. N(0, 1/n_out) so class scores stay O(1)
// across layer widths. Deterministic per seed.
LocalErrorHead init_head(std::uint64_t seed, int n_classes, int n_out);

// Class scores j * s. Also the quantity accumulated over time for readout.
Vec class_scores(const SpikeVec& spikes, const LocalErrorHead& head);

// Local classifier loss 0.5 * ||j*s - y||^2 against a one-hot target.
double local_loss(const SpikeVec& spikes, const Vec& y_onehot,
                  const LocalErrorHead& head);

// Feedback-aligned per-neuron error err = h * (j*s - y). Feeds encode_error.
Vec local_error(const SpikeVec& spikes, const Vec& y_onehot,
                const LocalErrorHead& head);

}  // namespace spikebar

#endif  // SPIKEBAR_LOCAL_ERROR_HPP_
