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

#include "spikebar/local_error.hpp"

#include <cmath>

#include "spikebar/rng.hpp"

namespace spikebar {

LocalErrorHead init_head(std::uint64_t seed, int n_classes, int n_out) {
  SB_CHECK_MSG(n_classes >= 2, "local classifier needs at least 2 classes");
  SB_CHECK_MSG(n_out >= 1, "layer must have at least one neuron");

  LocalErrorHead head;
  head.seed = seed;
  head.n_classes = n_classes;
  head.n_out = n_out;
  head.j = Mat(n_classes, n_out);
  head.h = Mat(n_out, n_classes);
  head.omega = Mat(n_out, n_classes);

  Rng j_rng(mix_seed(seed, 0));
  const double j_scale = 1.0 / std::sqrt(static_cast<double>(n_out));
  for (int k = 0; k < n_classes; ++k)
    for (int i = 0; i < n_out; ++i) head.j.at(k, i) = j_scale * normal(j_rng);

  Rng omega_rng(mix_seed(seed, 1));
  const double omega_sigma = std::sqrt(0.5);
  for (int i = 0; i < n_out; ++i) {
    for (int k = 0; k < n_classes; ++k) {
      const double w = normal(omega_rng, 1.0, omega_sigma);
      head.omega.at(i, k) = w;
      head.h.at(i, k) = head.j.at(k, i) * w;
    }
  }
  return head;
}

Vec class_scores(const SpikeVec& spikes, const LocalErrorHead& head) {
  SB_CHECK_MSG(static_cast<int>(spikes.size()) == head.n_out,
               "spike vector length != n_out");
  Vec scores(head.n_classes, 0.0);
  for (int k = 0; k < head.n_classes; ++k) {
    double acc = 0.0;
    for (int i = 0; i < head.n_out; ++i)
      if (spikes[i]) acc += head.j.at(k, i);
    scores[k] = acc;
  }
  return scores;
}

namespace {

Vec score_error(const SpikeVec& spikes, const Vec& y_onehot,
                const LocalErrorHead& head) {
  SB_CHECK_MSG(static_cast<int>(y_onehot.size()) == head.n_classes,
               "target length != class count");
  Vec e = class_scores(spikes, head);
  for (int k = 0; k < head.n_classes; ++k) e[k] -= y_onehot[k];
  return e;
}

}  // namespace

double local_loss(const SpikeVec& spikes, const Vec& y_onehot,
                  const LocalErrorHead& head) {
  const Vec e = score_error(spikes, y_onehot, head);
  double acc = 0.0;
  for (double v : e) acc += v * v;
  return 0.5 * acc;
}

Vec local_error(const SpikeVec& spikes, const Vec& y_onehot,
                const LocalErrorHead& head) {
  const Vec e = score_error(spikes, y_onehot, head);
  return matvec(head.h, e);
}

}  // namespace spikebar
