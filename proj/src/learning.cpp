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

#include "spikebar/learning.hpp"

#include <algorithm>
#include <cmath>

namespace spikebar {

SpikeVec box(const Vec& u, const SurrogateWindow& window) {
  window.validate();
  SpikeVec out(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = (window.u_minus < u[i] && u[i] < window.u_plus) ? 1 : 0;
  return out;
}

ErrorEncoding encode_error(const Vec& err, double theta, int step) {
  SB_CHECK_MSG(theta > 0.0, "theta must be positive");
  ErrorEncoding enc;
  enc.e.assign(err.size(), 0.0);
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double mag = std::abs(err[i]) - theta;
    if (mag > 0.0) {
      const int sign = err[i] > 0.0 ? +1 : -1;
      enc.e[i] = sign * mag;
      enc.events.push_back({static_cast<int>(i), sign, step});
    }
  }
  return enc;
}

namespace {

// Shared event-driven loop; `magnitude(i)` supplies the per-event scale
// multiplied into theta * p_j.
template <typename MagnitudeFn>
std::vector<WeightUpdate> event_updates(const std::vector<ErrorEvent>& events,
                                        const Vec& p, const Vec& u,
                                        const SurrogateWindow& window,
                                        double theta, MagnitudeFn magnitude) {
  SB_CHECK_MSG(theta > 0.0, "theta must be positive");
  window.validate();
  std::vector<WeightUpdate> updates;
  for (const ErrorEvent& ev : events) {
    SB_CHECK_MSG(ev.neuron >= 0 && ev.neuron < static_cast<int>(u.size()),
                 "event neuron index out of range");
    SB_CHECK_MSG(ev.sign == +1 || ev.sign == -1, "event sign must be +-1");
    const double ui = u[ev.neuron];
    if (!(window.u_minus < ui && ui < window.u_plus)) continue;
    const double scale = -ev.sign * theta * magnitude(ev.neuron);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] > 0.0)
        updates.push_back(
            {ev.neuron, static_cast<int>(j), scale * p[j]});
    }
  }
  return updates;
}

}  // namespace

std::vector<WeightUpdate> error_triggered_update(
    const std::vector<ErrorEvent>& events, const Vec& p, const Vec& u,
    const SurrogateWindow& window, double theta) {
  return event_updates(events, p, u, window, theta, [](int) { return 1.0; });
}

std::vector<WeightUpdate> error_triggered_update_residual(
    const std::vector<ErrorEvent>& events, const Vec& e, const Vec& p,
    const Vec& u, const SurrogateWindow& window, double theta) {
  SB_CHECK_MSG(e.size() == u.size(), "residual vector length != n_out");
  return event_updates(events, p, u, window, theta,
                       [&e](int i) { return std::abs(e[i]); });
}

std::vector<WeightUpdate> continuous_update(const Vec& err, const Vec& p,
                                            const Vec& u,
                                            const SurrogateWindow& window,
                                            double eta) {
  SB_CHECK_MSG(eta > 0.0, "eta must be positive");
  SB_CHECK_MSG(err.size() == u.size(), "error vector length != n_out");
  window.validate();
  std::vector<WeightUpdate> updates;
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (!(window.u_minus < u[i] && u[i] < window.u_plus)) continue;
    if (err[i] == 0.0) continue;
    const double scale = -eta * err[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] > 0.0)
        updates.push_back(
            {static_cast<int>(i), static_cast<int>(j), scale * p[j]});
    }
  }
  return updates;
}

void controller_step(ThetaController& ctl, int events_this_step, int n_neurons,
                     double dt_seconds) {
  SB_CHECK_MSG(n_neurons > 0, "n_neurons must be positive");
  SB_CHECK_MSG(dt_seconds > 0.0, "dt must be positive");
  ctl.validate();

  const double instantaneous_rate =
      static_cast<double>(events_this_step) / (n_neurons * dt_seconds);
  const double blend = std::min(1.0, dt_seconds / ctl.rate_tau);
  ctl.rate_estimate =
      (1.0 - blend) * ctl.rate_estimate + blend * instantaneous_rate;
  ctl.theta =
      std::max(ctl.theta_min,
               ctl.theta + ctl.gain * (ctl.rate_estimate - ctl.target_rate));
}

}  // namespace spikebar
