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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace nashmg {
namespace {

constexpr double kPivotEps = 1e-11;

void CheckDims(const PayoffMatrix& a, const MixedStrategy& x,
               const MixedStrategy& y) {
  if (x.size() != a.rows || y.size() != a.cols) {
    throw DimensionMismatchError(
        "strategy sizes (" + std::to_string(x.size()) + ", " +
        std::to_string(y.size()) + ") do not match matrix " +
        std::to_string(a.rows) + "x" + std::to_string(a.cols));
  }
}

std::vector<double> MatVec(const PayoffMatrix& a, const MixedStrategy& y) {
  std::vector<double> out(a.rows, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.cols; ++j) acc += a.At(i, j) * y.probs[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> VecMat(const MixedStrategy& x, const PayoffMatrix& a) {
  std::vector<double> out(a.cols, 0.0);
  for (int j = 0; j < a.cols; ++j) {
    double acc = 0.0;
    for (int i = 0; i < a.rows; ++i) acc += x.probs[i] * a.At(i, j);
    out[j] = acc;
  }
  return out;
}

void NormalizeSimplex(std::vector<double>* p) {
  double sum = 0.0;
  for (double& v : *p) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) {
    std::fill(p->begin(), p->end(), 1.0 / p->size());
  } else {
    for (double& v : *p) v /= sum;
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(int m, int n, std::vector<double> e)
    : rows(m), cols(n), entries(std::move(e)) {
  Validate();
}

void PayoffMatrix::Validate() const {
  if (rows < 1 || cols < 1) {
    throw InvariantViolationError("payoff matrix must be at least 1x1");
  }
  if (static_cast<int>(entries.size()) != rows * cols) {
    throw InvariantViolationError("payoff matrix entry count mismatch");
  }
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw NonFiniteError("payoff matrix contains NaN/Inf");
    }
  }
}

bool MixedStrategy::IsValid(double tol) const {
  if (probs.empty()) return false;
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

MixedStrategy MixedStrategy::Uniform(int n) {
  return MixedStrategy{std::vector<double>(n, 1.0 / n)};
}

MixedStrategy MixedStrategy::PureAt(int n, int index) {
  MixedStrategy s{std::vector<double>(n, 0.0)};
  s.probs[index] = 1.0;
  return s;
}

double MatrixExploitability(const PayoffMatrix& a, const MixedStrategy& x,
                            const MixedStrategy& y) {
  CheckDims(a, x, y);
  std::vector<double> ay = MatVec(a, y);
  std::vector<double> xa = VecMat(x, a);
  double best_row = *std::max_element(ay.begin(), ay.end());
  double best_col = *std::min_element(xa.begin(), xa.end());
  return best_row - best_col;
}

int PureBestResponseRow(const PayoffMatrix& a, const MixedStrategy& y) {
  if (y.size() != a.cols) {
    throw DimensionMismatchError("column strategy size does not match matrix");
  }
  std::vector<double> ay = MatVec(a, y);
  return static_cast<int>(std::max_element(ay.begin(), ay.end()) - ay.begin());
}

int PureBestResponseCol(const PayoffMatrix& a, const MixedStrategy& x) {
  if (x.size() != a.rows) {
    throw DimensionMismatchError("row strategy size does not match matrix");
  }
  std::vector<double> xa = VecMat(x, a);
  return static_cast<int>(std::min_element(xa.begin(), xa.end()) - xa.begin());
}

// Dense simplex on the normalized program. With A' = A + shift elementwise
// positive, the column player's optimal strategy solves
//   max 1'y  s.t.  A'y <= 1, y >= 0,
// whose optimum is 1/v' with v' the game value of A'; the row strategy is
// recovered from the dual values on the m constraints. Bland's rule is used
// throughout, which cannot cycle.
MatrixNashSolution SolveLp(const PayoffMatrix& a, double tol) {
  a.Validate();
  if (tol <= 0.0) throw InvariantViolationError("tol must be positive");
  const int m = a.rows;
  const int n = a.cols;

  double min_entry = *std::min_element(a.entries.begin(), a.entries.end());
  const double shift = 1.0 - min_entry;  // all shifted entries >= 1

  // Tableau: m constraint rows + objective row; columns are y (n), slacks (m),
  // rhs. Objective row holds reduced costs of the minimization of -1'y.
  const int ncols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(ncols, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a.At(i, j) + shift;
    t[i][n + i] = 1.0;
    t[i][ncols - 1] = 1.0;
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t[m][j] = -1.0;

  const long max_pivots = 10000L * (m + n) + 1000;
  for (long iter = 0;; ++iter) {
    if (iter > max_pivots) {
      throw InfeasibleLpError("simplex failed to terminate");
    }
    // Entering column: Bland (lowest index with negative reduced cost).
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t[m][j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal
    // Ratio test, ties broken by lowest basis variable index (Bland).
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] > kPivotEps) {
        double ratio = t[i][ncols - 1] / t[i][enter];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      // Unbounded: impossible for a positive payoff matrix.
      throw InfeasibleLpError("simplex reports unbounded program");
    }
    double piv = t[leave][enter];
    for (int j = 0; j < ncols; ++j) t[leave][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // 1'y = 1/v'; duals are the reduced costs on the slack columns.
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) y[basis[i]] = t[i][ncols - 1];
  }
  std::vector<double> u(m, 0.0);
  for (int i = 0; i < m; ++i) u[i] = t[m][n + i];

  double inv_value = t[m][ncols - 1];
  if (inv_value <= 0.0) {
    throw InfeasibleLpError("simplex produced nonpositive objective");
  }

  MatrixNashSolution sol;
  sol.row_strategy.probs = std::move(u);
  sol.col_strategy.probs = std::move(y);
  NormalizeSimplex(&sol.row_strategy.probs);
  NormalizeSimplex(&sol.col_strategy.probs);
  sol.value = 1.0 / inv_value - shift;

  std::vector<double> ay = MatVec(a, sol.col_strategy);
  std::vector<double> xa = VecMat(sol.row_strategy, a);
  double best_row = *std::max_element(ay.begin(), ay.end());
  double best_col = *std::min_element(xa.begin(), xa.end());
  sol.eps = best_row - best_col;
  // Keep the reported value consistent with the certificate.
  sol.value = std::clamp(sol.value, best_col, best_row);
  if (sol.eps > tol) {
    throw InfeasibleLpError("simplex solution misses tolerance: eps=" +
                            std::to_string(sol.eps));
  }
  return sol;
}

MatrixNashSolution SolveMwu(const PayoffMatrix& a, double eta, int iters) {
  a.Validate();
  if (eta <= 0.0) throw InvariantViolationError("eta must be positive");
  if (iters < 1) throw InvariantViolationError("iters must be >= 1");
  const int m = a.rows;
  const int n = a.cols;

  MixedStrategy x = MixedStrategy::Uniform(m);
  MixedStrategy y = MixedStrategy::Uniform(n);
  std::vector<double> x_avg(m, 0.0), y_avg(n, 0.0);

  for (int it = 0; it < iters; ++it) {
    for (int i = 0; i < m; ++i) x_avg[i] += x.probs[i];
    for (int j = 0; j < n; ++j) y_avg[j] += y.probs[j];

    // Simultaneous exponentiated update; gains for rows, losses for columns.
    std::vector<double> gain = MatVec(a, y);
    std::vector<double> loss = VecMat(x, a);
    double gmax = *std::max_element(gain.begin(), gain.end());
    double lmin = *std::min_element(loss.begin(), loss.end());
    double zx = 0.0, zy = 0.0;
    for (int i = 0; i < m; ++i) {
      x.probs[i] *= std::exp(eta * (gain[i] - gmax));
      zx += x.probs[i];
    }
    for (int j = 0; j < n; ++j) {
      y.probs[j] *= std::exp(-eta * (loss[j] - lmin));
      zy += y.probs[j];
    }
    for (int i = 0; i < m; ++i) x.probs[i] /= zx;
    for (int j = 0; j < n; ++j) y.probs[j] /= zy;
  }

  MatrixNashSolution sol;
  sol.row_strategy.probs = std::move(x_avg);
  sol.col_strategy.probs = std::move(y_avg);
  NormalizeSimplex(&sol.row_strategy.probs);
  NormalizeSimplex(&sol.col_strategy.probs);

  std::vector<double> ay = MatVec(a, sol.col_strategy);
  std::vector<double> xa = VecMat(sol.row_strategy, a);
  double value = 0.0;
  for (int i = 0; i < m; ++i) value += sol.row_strategy.probs[i] * ay[i];
  sol.value = value;
  sol.eps = *std::max_element(ay.begin(), ay.end()) -
            *std::min_element(xa.begin(), xa.end());
  return sol;
}

}  // namespace nashmg
