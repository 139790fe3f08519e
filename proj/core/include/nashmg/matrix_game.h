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

#ifndef NASHMG_MATRIX_GAME_H_
#define NASHMG_MATRIX_GAME_H_

#include <vector>

#include "nashmg/errors.h"

namespace nashmg {

// Payoff matrix of a zero-sum normal-form game. Entry (i, j) is the payoff to
// the row (max) player when row i meets column j.
struct PayoffMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;  // row-major, rows * cols

  PayoffMatrix() = default;
  PayoffMatrix(int m, int n) : rows(m), cols(n), entries(m * n, 0.0) {}
  PayoffMatrix(int m, int n, std::vector<double> e);

  double& At(int i, int j) { return entries[i * cols + j]; }
  double At(int i, int j) const { return entries[i * cols + j]; }

  // Throws NonFiniteError / InvariantViolationError.
  void Validate() const;
};

struct MixedStrategy {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  bool IsValid(double tol = 1e-9) const;
  static MixedStrategy Uniform(int n);
  static MixedStrategy PureAt(int n, int index);
};

struct MatrixNashSolution {
  MixedStrategy row_strategy;
  MixedStrategy col_strategy;
  double value = 0.0;
  double eps = 0.0;  // achieved equilibrium gap, >= 0
};

// Solves the game exactly by linear programming (dense simplex on the
// normalized program with dual recovery). The returned eps is recomputed from
// the strategies and satisfies eps <= tol.
MatrixNashSolution SolveLp(const PayoffMatrix& a, double tol = 1e-8);

// Multiplicative weights update with simultaneous row/col updates; the
// returned strategies are the time-averages of the iterates and eps is
// whatever gap those averages achieve (no tolerance guarantee).
MatrixNashSolution SolveMwu(const PayoffMatrix& a, double eta = 0.1,
                            int iters = 10000);

// max_i (A y)_i - min_j (x^T A)_j; zero exactly at a Nash pair.
double MatrixExploitability(const PayoffMatrix& a, const MixedStrategy& x,
                            const MixedStrategy& y);

// argmax_i (A y)_i resp. argmin_j (x^T A)_j, lowest index on ties.
int PureBestResponseRow(const PayoffMatrix& a, const MixedStrategy& y);
int PureBestResponseCol(const PayoffMatrix& a, const MixedStrategy& x);

}  // namespace nashmg

#endif  // NASHMG_MATRIX_GAME_H_
