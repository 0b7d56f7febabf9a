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

#ifndef SPIKEBAR_LEARNING_HPP_
#define SPIKEBAR_LEARNING_HPP_

#include <vector>

#include "spikebar/matrix.hpp"

namespace spikebar {

// Support of the box surrogate derivative. Updates are gated to membranes in
// the open interval (u_minus, u_plus); the interval must contain 0 so that
// firing-threshold crossings stay learnable.
struct SurrogateWindow {
  double u_minus = -0.5;
  double u_plus = 0.5;

  void validate() const {
    SB_CHECK_MSG(u_minus < 0.0 && 0.0 < u_plus,
                 "surrogate window must contain 0");
  }
};

// One bipolar error event: neuron's error magnitude crossed the stop-learning
// threshold at `step`, in direction `sign`.
struct ErrorEvent {
  int neuron = 0;
  int sign = +1;  // +1 or -1
  int step = 0;
};

// One sparse weight change, in weight units (the crossbar maps it onto a
// conductance change).
struct WeightUpdate {
  int row = 0;  // post-synaptic neuron i
  int col = 0;  // pre-synaptic input j
  double dw = 0.0;
};

// Proportional controller that floats the stop-learning threshold so the mean
// error-event rate (events per neuron per second) tracks target_rate.
struct ThetaController {
  double theta = 0.5;
  double target_rate = 10.0;  // Hz
  double gain = 2e-4;         // theta increment per Hz of rate error, per step
  double rate_estimate = 0.0;  // exponentially averaged measured rate, Hz
  double rate_tau = 0.05;      // averaging time constant, seconds
  double theta_min = 1e-4;

  void validate() const {
    SB_CHECK_MSG(theta > 0.0, "theta must be positive");
    SB_CHECK_MSG(target_rate >= 0.0, "target rate must be non-negative");
    SB_CHECK_MSG(rate_estimate >= 0.0, "rate estimate must be non-negative");
    SB_CHECK_MSG(gain >= 0.0 && rate_tau > 0.0 && theta_min > 0.0,
                 "controller constants out of range");
  }
};

// box(u)_i = 1 iff u_minus < u_i < u_plus (boundaries excluded).
SpikeVec box(const Vec& u, const SurrogateWindow& window);

struct ErrorEncoding {
  Vec e;  // e_i = sign(err_i) * max(|err_i| - theta, 0)
  std::vector<ErrorEvent> events;  // one unit event per neuron with |err| > theta
};

// Thresholds a real error vector into the deadzone-rectified value e and the
// bipolar event list. Exactly one event per neuron per step, carrying only the
// error's sign; magnitude is restored at update time as theta.
ErrorEncoding encode_error(const Vec& err, double theta, int step = 0);

// Error-triggered three-factor updates: for each event on neuron i with the
// membrane inside the surrogate window, emits dw_ij = -sign * theta * p_j for
// every input j with p_j > 0. p and u must be the values sampled at the step
// that generated the events.
std::vector<WeightUpdate> error_triggered_update(
    const std::vector<ErrorEvent>& events, const Vec& p, const Vec& u,
    const SurrogateWindow& window, double theta);

// Variant that scales each update by the residual error |e_i| instead of a
// unit event. `e` is the rectified error from encode_error.
std::vector<WeightUpdate> error_triggered_update_residual(
    const std::vector<ErrorEvent>& events, const Vec& e, const Vec& p,
    const Vec& u, const SurrogateWindow& window, double theta);

// Continuous baseline: dw_ij = -eta * err_i * p_j for every neuron inside the
// window and every input with p_j > 0, each and every step.
std::vector<WeightUpdate> continuous_update(const Vec& err, const Vec& p,
                                            const Vec& u,
                                            const SurrogateWindow& window,
                                            double eta);

// Advances the rate estimate with this step's event count and applies the
// proportional law  theta <- max(theta_min, theta + gain*(rate - target)).
// A higher measured rate never decreases theta.
void controller_step(ThetaController& ctl, int events_this_step, int n_neurons,
                     double dt_seconds);

}  // namespace spikebar

#endif  // SPIKEBAR_LEARNING_HPP_
