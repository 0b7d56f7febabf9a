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

#include "doctest.h"
#include "spikebar/rng.hpp"

using namespace spikebar;

TEST_SUITE("local_error") {

TEST_CASE("the same seed builds the same head") {
  const LocalErrorHead a = init_head(17, 5, 20);
  const LocalErrorHead b = init_head(17, 5, 20);
  CHECK(a.j == b.j);
  CHECK(a.h == b.h);
  CHECK(a.omega == b.omega);
  const LocalErrorHead c = init_head(18, 5, 20);
  CHECK(a.j != c.j);
}

TEST_CASE("h is the transpose of j scaled elementwise by omega") {
  const LocalErrorHead head = init_head(3, 4, 6);
  for (int i = 0; i < head.n_out; ++i)
    for (int k = 0; k < head.n_classes; ++k)
      CHECK(head.h.at(i, k) == head.j.at(k, i) * head.omega.at(i, k));
}

TEST_CASE("omega draws follow N(1, 1/2)") {
  // 500 x 200 = 1e5 entries.
  const LocalErrorHead head = init_head(99, 200, 500);
  double sum = 0.0;
  for (double w : head.omega.a) sum += w;
  const double n = static_cast<double>(head.omega.size());
  const double mean = sum / n;
  double var_sum = 0.0;
  for (double w : head.omega.a) var_sum += (w - mean) * (w - mean);
  const double variance = var_sum / (n - 1.0);
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  CHECK(variance == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("readout entries scale as 1/sqrt(n_out)") {
  const int n_out = 400;
  const LocalErrorHead head = init_head(4, 250, n_out);
  double sq = 0.0;
  for (double v : head.j.a) sq += v * v;
  const double variance = sq / static_cast<double>(head.j.size());
  CHECK(variance == doctest::Approx(1.0 / n_out).epsilon(0.05));
}

TEST_CASE("degenerate single-class heads are rejected") {
  CHECK_THROWS_AS(init_head(1, 1, 10), ContractError);
  CHECK_THROWS_AS(init_head(1, 2, 0), ContractError);
}

TEST_CASE("loss is zero when scores hit the target exactly") {
  LocalErrorHead head;
  head.n_classes = 2;
  head.n_out = 1;
  head.j = Mat(2, 1);
  head.j.at(0, 0) = 1.0;
  head.j.at(1, 0) = 0.0;
  head.h = Mat(1, 2);
  head.omega = Mat(1, 2, 1.0);
  CHECK(local_loss(SpikeVec{1}, {1.0, 0.0}, head) == 0.0);
}

TEST_CASE("silent layer against a one-hot target costs one half") {
  const LocalErrorHead head = init_head(2, 4, 10);
  Vec y(4, 0.0);
  y[2] = 1.0;
  CHECK(local_loss(SpikeVec(10, 0), y, head) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("loss matches a scalar-loop oracle on a random instance") {
  Rng rng(8);
  const LocalErrorHead head = init_head(21, 6, 12);
  SpikeVec s(12);
  for (auto& b : s) b = uniform_unit(rng) < 0.5 ? 1 : 0;
  Vec y(6, 0.0);
  y[3] = 1.0;

  double oracle = 0.0;
  for (int k = 0; k < 6; ++k) {
    double score = 0.0;
    for (int i = 0; i < 12; ++i) score += head.j.at(k, i) * (s[i] ? 1.0 : 0.0);
    oracle += (score - y[k]) * (score - y[k]);
  }
  oracle *= 0.5;
  CHECK(local_loss(s, y, head) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("zero score error backpropagates to zero") {
  LocalErrorHead head = init_head(5, 3, 7);
  const SpikeVec s(7, 0);
  const Vec y(3, 0.0);  // scores are 0 too, so e = 0
  const Vec err = local_error(s, y, head);
  for (double v : err) CHECK(v == 0.0);
}

TEST_CASE("with omega == 1 the error equals the exact loss gradient") {
  LocalErrorHead head = init_head(33, 4, 9);
  // Rebuild feedback as the plain transpose.
  for (int i = 0; i < head.n_out; ++i)
    for (int k = 0; k < head.n_classes; ++k) {
      head.omega.at(i, k) = 1.0;
      head.h.at(i, k) = head.j.at(k, i);
    }

  Rng rng(60);
  SpikeVec s(9);
  for (auto& b : s) b = uniform_unit(rng) < 0.5 ? 1 : 0;
  Vec y(4, 0.0);
  y[1] = 1.0;

  // d(0.5 ||J s - y||^2)/ds_i = sum_k J_ki (J s - y)_k.
  Vec e = class_scores(s, head);
  for (int k = 0; k < 4; ++k) e[k] -= y[k];
  const Vec err = local_error(s, y, head);
  for (int i = 0; i < 9; ++i) {
    double grad = 0.0;
    for (int k = 0; k < 4; ++k) grad += head.j.at(k, i) * e[k];
    CHECK(err[i] == doctest::Approx(grad).epsilon(1e-14));
  }
}

TEST_CASE("property: the error is linear in the score error") {
  // local_error(s, y1 + y2 - scores) decomposes; test via two targets whose
  // errors sum: err(y_a) + err(y_b) == err against (y_a + y_b - scores).
  const LocalErrorHead head = init_head(2, 3, 5);
  Rng rng(14);
  SpikeVec s(5);
  for (auto& b : s) b = uniform_unit(rng) < 0.5 ? 1 : 0;
  const Vec scores = class_scores(s, head);

  Vec ya(3), yb(3), combined(3);
  for (int k = 0; k < 3; ++k) {
    ya[k] = uniform_range(rng, -1.0, 1.0);
    yb[k] = uniform_range(rng, -1.0, 1.0);
    combined[k] = ya[k] + yb[k] - scores[k];
  }
  const Vec err_a = local_error(s, ya, head);
  const Vec err_b = local_error(s, yb, head);
  const Vec err_c = local_error(s, combined, head);
  for (int i = 0; i < 5; ++i)
    CHECK(err_c[i] == doctest::Approx(err_a[i] + err_b[i]).epsilon(1e-12));
}

TEST_CASE("feedback stays sign-aligned with the true gradient on average") {
  // Monte-Carlo over 1000 fresh heads: agreement between the signs of H e
  // and J^T e must beat chance clearly.
  Rng rng(1234);
  const int n_out = 8, n_classes = 3;
  std::uint64_t agree = 0, total = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const LocalErrorHead head =
        init_head(mix_seed(5000, draw), n_classes, n_out);
    Vec e(n_classes);
    for (double& v : e) v = uniform_range(rng, -1.0, 1.0);
    const Vec fed = matvec(head.h, e);
    const Vec grad = matvec_transposed(head.j, e);
    for (int i = 0; i < n_out; ++i) {
      if (fed[i] == 0.0 || grad[i] == 0.0) continue;
      if ((fed[i] > 0.0) == (grad[i] > 0.0)) ++agree;
      ++total;
    }
  }
  CHECK(total > 0);
  CHECK(static_cast<double>(agree) / total > 0.75);
}

TEST_CASE("dimension mismatches are rejected") {
  const LocalErrorHead head = init_head(3, 4, 6);
  CHECK_THROWS_AS(class_scores(SpikeVec(5, 0), head), ContractError);
  CHECK_THROWS_AS(local_loss(SpikeVec(6, 0), Vec(3, 0.0), head),
                  ContractError);
}

}  // TEST_SUITE("local_error")
