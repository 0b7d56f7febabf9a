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

#include "spikebar/dynamics.hpp"

#include <algorithm>

namespace spikebar {

namespace {

Vec randomized_decays(int n, double nominal, double spread, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    const double d = nominal * uniform_range(rng, 1.0 - spread, 1.0 + spread);
    v[i] = std::clamp(d, 0.0, 0.999);
  }
  return v;
}

}  // namespace

LayerParams LayerParams::uniform(int n_in, int n_out, double alpha,
                                 double beta, double gamma, double delta) {
  LayerParams p;
  p.n_in = n_in;
  p.n_out = n_out;
  p.alpha.assign(n_in, alpha);
  p.beta.assign(n_in, beta);
  p.gamma.assign(n_out, gamma);
  p.delta = delta;
  p.validate();
  return p;
}

LayerParams LayerParams::randomized(int n_in, int n_out, double alpha,
                                    double beta, double gamma, double delta,
                                    double spread, Rng& rng) {
  SB_CHECK_MSG(spread >= 0.0 && spread < 1.0, "decay spread out of range");
  LayerParams p;
  p.n_in = n_in;
  p.n_out = n_out;
  p.alpha = randomized_decays(n_in, alpha, spread, rng);
  p.beta = randomized_decays(n_in, beta, spread, rng);
  p.gamma = randomized_decays(n_out, gamma, spread, rng);
  p.delta = delta;
  p.validate();
  return p;
}

void LayerParams::validate() const {
  SB_CHECK_MSG(n_in > 0 && n_out > 0, "layer sizes must be positive");
  SB_CHECK_MSG(static_cast<int>(alpha.size()) == n_in, "alpha length != n_in");
  SB_CHECK_MSG(static_cast<int>(beta.size()) == n_in, "beta length != n_in");
  SB_CHECK_MSG(static_cast<int>(gamma.size()) == n_out,
               "gamma length != n_out");
  SB_CHECK_MSG(delta >= 0.0, "delta must be non-negative");
  auto in_unit = [](const Vec& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double d) { return d >= 0.0 && d < 1.0; });
  };
  SB_CHECK_MSG(in_unit(alpha) && in_unit(beta) && in_unit(gamma),
               "decay constants must lie in [0, 1)");
}

LayerState LayerState::zeros(const LayerParams& params) {
  LayerState s;
  s.u.assign(params.n_out, 0.0);
  s.s.assign(params.n_out, 0);
  s.p.assign(params.n_in, 0.0);
  s.q.assign(params.n_in, 0.0);
  s.r.assign(params.n_out, 0.0);
  return s;
}

void LayerState::check_dims(const LayerParams& params) const {
  SB_CHECK_MSG(static_cast<int>(u.size()) == params.n_out &&
                   static_cast<int>(s.size()) == params.n_out &&
                   static_cast<int>(r.size()) == params.n_out &&
                   static_cast<int>(p.size()) == params.n_in &&
                   static_cast<int>(q.size()) == params.n_in,
               "layer state dimensions do not match params");
}

void step_traces(LayerState& state, const SpikeVec& in_spikes,
                 const LayerParams& params) {
  state.check_dims(params);
  SB_CHECK_MSG(static_cast<int>(in_spikes.size()) == params.n_in,
               "input spike vector length != n_in");

  if (params.binary_mode) {
    // p holds last step's inputs; q and r are frozen at zero.
    for (int j = 0; j < params.n_in; ++j)
      state.p[j] = in_spikes[j] ? 1.0 : 0.0;
    return;
  }

  for (int j = 0; j < params.n_in; ++j) {
    state.p[j] = params.alpha[j] * state.p[j] + state.q[j];
    state.q[j] = params.beta[j] * state.q[j] + (in_spikes[j] ? 1.0 : 0.0);
  }
  for (int i = 0; i < params.n_out; ++i)
    state.r[i] = params.gamma[i] * state.r[i] + (state.s[i] ? 1.0 : 0.0);
}

void membrane_and_fire(LayerState& state, const Mat& weights,
                       const LayerParams& params) {
  state.check_dims(params);
  SB_CHECK_MSG(weights.rows == params.n_out && weights.cols == params.n_in,
               "weight matrix dimensions do not match layer");

  for (int i = 0; i < params.n_out; ++i) {
    double acc = 0.0;
    const double* row = &weights.a[static_cast<std::size_t>(i) * weights.cols];
    for (int j = 0; j < params.n_in; ++j) acc += row[j] * state.p[j];
    acc -= params.delta * state.r[i];
    state.u[i] = acc;
    state.s[i] = acc > 0.0 ? 1 : 0;
  }
}

LayerParams binary_network_mode(LayerParams params) {
  std::fill(params.alpha.begin(), params.alpha.end(), 0.0);
  params.delta = 0.0;
  params.binary_mode = true;
  return params;
}

}  // namespace spikebar
