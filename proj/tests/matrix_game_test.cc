// Copyright 2026 The Nashmg Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nashmg/matrix_game.h"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "nashmg/rng.h"

namespace nashmg {
namespace {

PayoffMatrix RandomMatrix(int m, int n, Rng& rng) {
  PayoffMatrix a(m, n);
  for (double& v : a.entries) v = rng.UniformRange(-1.0, 1.0);
  return a;
}

double MinimaxUpper(const PayoffMatrix& a) {
  // min over columns of the column maximum.
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < a.cols; ++j) {
    double col_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.rows; ++i) col_max = std::max(col_max, a.At(i, j));
    best = std::min(best, col_max);
  }
  return best;
}

double MaximinLower(const PayoffMatrix& a) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.rows; ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < a.cols; ++j) row_min = std::min(row_min, a.At(i, j));
    best = std::max(best, row_min);
  }
  return best;
}

TEST_CASE("SolveLp matching pennies") {
  PayoffMatrix a(2, 2, {1, -1, -1, 1});
  MatrixNashSolution sol = SolveLp(a);
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.row_strategy.probs[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.col_strategy.probs[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.eps <= 1e-8);
}

TEST_CASE("SolveLp rock paper scissors") {
  PayoffMatrix a(3, 3, {0, -1, 1, 1, 0, -1, -1, 1, 0});
  MatrixNashSolution sol = SolveLp(a);
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-9));
  for (int i = 0; i < 3; ++i) {
    CHECK(sol.row_strategy.probs[i] == doctest::Approx(1.0 / 3).epsilon(1e-8));
    CHECK(sol.col_strategy.probs[i] == doctest::Approx(1.0 / 3).epsilon(1e-8));
  }
}

TEST_CASE("SolveLp known mixed equilibrium") {
  // Indifference conditions give x = y = (0.4, 0.6), v = 0.2.
  PayoffMatrix a(2, 2, {2, -1, -1, 1});
  MatrixNashSolution sol = SolveLp(a);
  CHECK(sol.value == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(sol.row_strategy.probs[0] == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(sol.row_strategy.probs[1] == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(sol.col_strategy.probs[0] == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("SolveLp saddle point game") {
  PayoffMatrix a(2, 2, {1, 0, 2, 1});
  MatrixNashSolution sol = SolveLp(a);
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.row_strategy.probs[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.col_strategy.probs[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("SolveLp degenerate shapes") {
  PayoffMatrix one(1, 1, {-0.3});
  MatrixNashSolution sol = SolveLp(one);
  CHECK(sol.value == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(sol.eps == doctest::Approx(0.0));

  PayoffMatrix row(1, 3, {0.5, -0.2, 0.7});
  sol = SolveLp(row);
  CHECK(sol.value == doctest::Approx(-0.2).epsilon(1e-9));

  PayoffMatrix col(3, 1, {0.5, -0.2, 0.7});
  sol = SolveLp(col);
  CHECK(sol.value == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("SolveLp random matrices satisfy eps and sandwich") {
  Rng rng(101);
  for (int k = 0; k < 200; ++k) {
    int m = 1 + rng.UniformInt(8);
    int n = 1 + rng.UniformInt(8);
    PayoffMatrix a = RandomMatrix(m, n, rng);
    MatrixNashSolution sol = SolveLp(a);
    CHECK(sol.eps <= 1e-8);
    CHECK(sol.row_strategy.IsValid());
    CHECK(sol.col_strategy.IsValid());
    CHECK(sol.value >= MaximinLower(a) - 1e-8);
    CHECK(sol.value <= MinimaxUpper(a) + 1e-8);
    double recomputed =
        MatrixExploitability(a, sol.row_strategy, sol.col_strategy);
    CHECK(std::abs(recomputed - sol.eps) <= 1e-12);
  }
}

TEST_CASE("SolveLp affine covariance of the value") {
  Rng rng(202);
  for (int k = 0; k < 50; ++k) {
    PayoffMatrix a = RandomMatrix(4, 5, rng);
    double v = SolveLp(a).value;
    double c = 0.25 + 3.0 * rng.Uniform();
    double d = rng.UniformRange(-2.0, 2.0);
    PayoffMatrix scaled = a;
    for (double& e : scaled.entries) e = c * e + d;
    MatrixNashSolution sol = SolveLp(scaled);
    CHECK(std::abs(sol.value - (c * v + d)) <= 1e-8 * std::max(1.0, c));
    CHECK(MatrixExploitability(scaled, sol.row_strategy, sol.col_strategy) <=
          1e-7);
  }
}

TEST_CASE("SolveMwu approximates the LP solution") {
  Rng rng(303);
  for (int k = 0; k < 20; ++k) {
    PayoffMatrix a = RandomMatrix(6, 6, rng);
    MatrixNashSolution lp = SolveLp(a);
    MatrixNashSolution mwu = SolveMwu(a);
    CHECK(mwu.row_strategy.IsValid());
    CHECK(mwu.col_strategy.IsValid());
    CHECK(std::abs(mwu.value - lp.value) <= 0.02);
    CHECK(mwu.eps <= 0.05);
  }
}

TEST_CASE("SolveMwu exact on trivial games") {
  PayoffMatrix a(1, 1, {0.4});
  MatrixNashSolution sol = SolveMwu(a);
  CHECK(sol.value == doctest::Approx(0.4));
  CHECK(sol.eps == doctest::Approx(0.0));
}

TEST_CASE("MatrixExploitability nonnegative and zero at Nash") {
  PayoffMatrix a(2, 2, {1, -1, -1, 1});
  MixedStrategy half{{0.5, 0.5}};
  CHECK(MatrixExploitability(a, half, half) == doctest::Approx(0.0));
  MixedStrategy pure{{1.0, 0.0}};
  CHECK(MatrixExploitability(a, pure, pure) == doctest::Approx(2.0));
  Rng rng(404);
  for (int k = 0; k < 100; ++k) {
    PayoffMatrix b = RandomMatrix(3, 4, rng);
    MixedStrategy x{{rng.Uniform(), rng.Uniform(), rng.Uniform()}};
    double sx = x.probs[0] + x.probs[1] + x.probs[2];
    for (double& p : x.probs) p /= sx;
    MixedStrategy y = MixedStrategy::Uniform(4);
    CHECK(MatrixExploitability(b, x, y) >= 0.0);
  }
}

TEST_CASE("Pure best responses break ties at lowest index") {
  PayoffMatrix a(3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1});
  MixedStrategy u = MixedStrategy::Uniform(3);
  CHECK(PureBestResponseRow(a, u) == 0);
  CHECK(PureBestResponseCol(a, u) == 0);
}

TEST_CASE("Validation rejects bad input") {
  PayoffMatrix a(2, 2, {1, -1, -1, 1});
  a.entries[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SolveLp(a), NonFiniteError);
  CHECK_THROWS_AS(PayoffMatrix(2, 2, {1.0, 2.0}), InvariantViolationError);
  MixedStrategy bad{{0.7, 0.7}};
  CHECK_FALSE(bad.IsValid());
}

}  // namespace
}  // namespace nashmg
