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

#include "spikebar/crossbar.hpp"

#include <algorithm>
#include <cmath>

namespace spikebar {

void CrossbarOptions::validate() const {
  SB_CHECK_MSG(g_min < g_max, "conductance range must be non-empty");
  SB_CHECK_MSG(init_spread >= 0.0 && init_spread <= 0.5,
               "init_spread must lie in [0, 0.5]");
  SB_CHECK_MSG(pulse_levels >= 0, "pulse_levels must be non-negative");
  SB_CHECK_MSG(write_noise_sigma >= 0.0, "write noise must be non-negative");
}

CrossbarArray::CrossbarArray(int n_out, int n_in,
                             const CrossbarOptions& options,
                             std::uint64_t seed)
    : n_out_(n_out),
      n_in_(n_in),
      options_(options),
      g_(n_out, n_in),
      write_counts_(static_cast<std::size_t>(n_out) * n_in, 0),
      noise_rng_(mix_seed(seed, 0x9b)) {
  SB_CHECK_MSG(n_out > 0 && n_in > 0, "crossbar dimensions must be positive");
  options_.validate();

  Rng init_rng(seed);
  const double half_width = options_.init_spread * (options_.g_max - options_.g_min);
  const double ref = g_ref();
  for (double& g : g_.a)
    g = uniform_range(init_rng, ref - half_width, ref + half_width);
}

Mat CrossbarArray::effective_weight() const {
  Mat w(n_out_, n_in_);
  const double ref = g_ref();
  for (std::size_t k = 0; k < g_.a.size(); ++k) w.a[k] = g_.a[k] - ref;
  return w;
}

Vec CrossbarArray::vmm(const Vec& p) const {
  SB_CHECK_MSG(static_cast<int>(p.size()) == n_in_,
               "trace vector length != n_in");
  Vec u(n_out_, 0.0);
  const double ref = g_ref();
  for (int i = 0; i < n_out_; ++i) {
    double acc = 0.0;
    const double* row = &g_.a[static_cast<std::size_t>(i) * n_in_];
    for (int j = 0; j < n_in_; ++j) acc += (row[j] - ref) * p[j];
    u[i] = acc;
  }
  return u;
}

void CrossbarArray::program(std::span<const WeightUpdate> updates) {
  const double range = options_.g_max - options_.g_min;
  for (const WeightUpdate& up : updates) {
    SB_CHECK_MSG(up.row >= 0 && up.row < n_out_ && up.col >= 0 &&
                     up.col < n_in_,
                 "update index out of range");
    double& g = g_.at(up.row, up.col);

    double dg = up.dw;
    if (options_.model == UpdateModel::kSoftBound) {
      if (dg > 0.0)
        dg *= (options_.g_max - g) / range;
      else if (dg < 0.0)
        dg *= (g - options_.g_min) / range;
    }
    if (options_.write_noise_sigma > 0.0)
      dg *= std::exp(normal(noise_rng_, 0.0, options_.write_noise_sigma));
    if (options_.pulse_levels > 0) {
      const double lsb = range / options_.pulse_levels;
      dg = std::round(dg / lsb) * lsb;
    }

    g = std::clamp(g + dg, options_.g_min, options_.g_max);
    ++write_counts_[static_cast<std::size_t>(up.row) * n_in_ + up.col];
    ++total_writes_;
  }
}

WriteStats CrossbarArray::write_stats() const {
  WriteStats stats;
  stats.total_writes = total_writes_;
  for (std::uint32_t c : write_counts_) {
    if (c == 0) {
      ++stats.untouched_devices;
      continue;
    }
    stats.per_device_max = std::max(stats.per_device_max, c);
    std::size_t bucket = 0;
    while ((c >> (bucket + 1)) != 0) ++bucket;
    if (stats.histogram.size() <= bucket) stats.histogram.resize(bucket + 1, 0);
    ++stats.histogram[bucket];
  }
  return stats;
}

void CrossbarArray::restore(const Mat& g,
                            const std::vector<std::uint32_t>& write_counts,
                            std::uint64_t total_writes) {
  SB_CHECK_MSG(g.rows == n_out_ && g.cols == n_in_,
               "conductance matrix shape mismatch");
  SB_CHECK_MSG(write_counts.size() == write_counts_.size(),
               "write counter shape mismatch");
  for (double v : g.a)
    SB_CHECK_MSG(v >= options_.g_min && v <= options_.g_max,
                 "restored conductance out of bounds");
  g_ = g;
  write_counts_ = write_counts;
  total_writes_ = total_writes;
}

}  // namespace spikebar
