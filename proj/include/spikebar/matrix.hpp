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

#ifndef SPIKEBAR_MATRIX_HPP_
#define SPIKEBAR_MATRIX_HPP_

#include <cstdint>
#include <vector>

#include "spikebar/check.hpp"

namespace spikebar {

using Vec = std::vector<double>;
using SpikeVec = std::vector<std::uint8_t>;  // entries in {0, 1}

// Dense row-major matrix. All reductions run in fixed (row-major) order so
// results are bit-reproducible.
struct Mat {
  int rows = 0;
  int cols = 0;
  Vec a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {
    SB_CHECK(r >= 0 && c >= 0);
  }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  std::size_t size() const { return a.size(); }

  bool operator==(const Mat& other) const = default;
};

// y = M x
inline Vec matvec(const Mat& m, const Vec& x) {
  SB_CHECK_MSG(static_cast<int>(x.size()) == m.cols,
               "matvec dimension mismatch");
  Vec y(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

// y = M^T x
inline Vec matvec_transposed(const Mat& m, const Vec& x) {
  SB_CHECK_MSG(static_cast<int>(x.size()) == m.rows,
               "matvec_transposed dimension mismatch");
  Vec y(m.cols, 0.0);
  for (int j = 0; j < m.cols; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m.rows; ++i) acc += m.at(i, j) * x[i];
    y[j] = acc;
  }
  return y;
}

inline Vec to_real(const SpikeVec& s) {
  Vec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i] ? 1.0 : 0.0;
  return v;
}

}  // namespace spikebar

#endif  // SPIKEBAR_MATRIX_HPP_
