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

#ifndef SPIKEBAR_DYNAMICS_HPP_
#define SPIKEBAR_DYNAMICS_HPP_

#include <cstdint>

#include "spikebar/matrix.hpp"
#include "spikebar/rng.hpp"

namespace spikebar {

// Discrete-time neuron/synapse constants for one layer.
//
// Per-input decays alpha (membrane trace) and beta (synaptic trace), per-neuron
// refractory decay gamma, and reset strength delta. All decays live in [0, 1).
// In binary mode the trace machinery is bypassed: the membrane trace is
// replaced each step by the previous input spike vector and Q/R are frozen,
// which turns the layer into a plain binary threshold unit with a one-step
// pipeline delay.
struct LayerParams {
  Vec alpha;  // length n_in
  Vec beta;   // length n_in
  Vec gamma;  // length n_out
  double delta = 0.0;
  int n_in = 0;
  int n_out = 0;
  bool binary_mode = false;

  // All channels share the same nominal decay values.
  static LayerParams uniform(int n_in, int n_out, double alpha, double beta,
                             double gamma, double delta);

  // Per-channel decays drawn uniformly within +-spread (relative) of the
  // nominals, clipped to [0, 0.999]. spread = 0 reproduces uniform().
  static LayerParams randomized(int n_in, int n_out, double alpha, double beta,
                                double gamma, double delta, double spread,
                                Rng& rng);

  void validate() const;
};

// Per-layer state vectors: membrane u, spikes s (neuron-indexed), traces p, q
// (input-indexed) and refractory r (neuron-indexed). Zero-initialized.
struct LayerState {
  Vec u;
  SpikeVec s;
  Vec p;
  Vec q;
  Vec r;

  static LayerState zeros(const LayerParams& params);
  void check_dims(const LayerParams& params) const;
};

// Advances the three linear traces by one step:
//   p <- alpha*p + q,  q <- beta*q + in_spikes,  r <- gamma*r + s.
// u and s are left untouched. In binary mode p is set to in_spikes and q, r
// are skipped.
void step_traces(LayerState& state, const SpikeVec& in_spikes,
                 const LayerParams& params);

// Computes u = W p - delta*r and fires s_i = 1 iff u_i > 0 (a membrane exactly
// at rest does not fire). Overwrites state.u and state.s.
void membrane_and_fire(LayerState& state, const Mat& weights,
                       const LayerParams& params);

// Returns params rewired as a standard binary threshold network: alpha = 0,
// delta = 0, binary_mode set.
LayerParams binary_network_mode(LayerParams params);

}  // namespace spikebar

#endif  // SPIKEBAR_DYNAMICS_HPP_
