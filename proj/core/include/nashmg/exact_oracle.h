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
//
// Ground-truth dynamic programming on a known TabularMG: Nash values and
// policies by backward induction, exact best responses to Markov policies and
// to policy mixtures, and exact exploitability (the duality gap).

#ifndef NASHMG_EXACT_ORACLE_H_
#define NASHMG_EXACT_ORACLE_H_

#include <cstdint>

#include "nashmg/markov_game.h"
#include "nashmg/matrix_game.h"

namespace nashmg {

// V[h][s] for h in [0, H]; the extra row V[H][.] = 0 is stored explicitly.
struct ValueTable {
  int horizon = 0;
  int num_states = 0;
  std::vector<double> v;  // [H+1][S]

  ValueTable() = default;
  ValueTable(int horizon, int num_states)
      : horizon(horizon),
        num_states(num_states),
        v(static_cast<size_t>(horizon + 1) * num_states, 0.0) {}

  double At(int h, int s) const {
    return v[static_cast<size_t>(h) * num_states + s];
  }
  double& At(int h, int s) {
    return v[static_cast<size_t>(h) * num_states + s];
  }
};

struct QTable {
  int horizon = 0;
  int num_states = 0;
  int num_actions_max = 0;
  int num_actions_min = 0;
  std::vector<double> q;  // [H][S][A][B]

  QTable() = default;
  QTable(int horizon, int num_states, int num_actions_max, int num_actions_min)
      : horizon(horizon),
        num_states(num_states),
        num_actions_max(num_actions_max),
        num_actions_min(num_actions_min),
        q(static_cast<size_t>(horizon) * num_states * num_actions_max *
              num_actions_min,
          0.0) {}

  double At(int h, int s, int a, int b) const {
    return q[((static_cast<size_t>(h) * num_states + s) * num_actions_max +
              a) *
                 num_actions_min +
             b];
  }
  double& At(int h, int s, int a, int b) {
    return q[((static_cast<size_t>(h) * num_states + s) * num_actions_max +
              a) *
                 num_actions_min +
             b];
  }
  // The one-shot stage game at (h, s).
  PayoffMatrix StageMatrix(int h, int s) const;
};

struct NashSolutionMG {
  QTable q_star;
  ValueTable v_star;
  MarkovPolicy mu_star;
  MarkovPolicy nu_star;
};

// Backward induction h = H-1..0 with a per-state LP equilibrium solve.
NashSolutionMG ExactNashSolve(const TabularMG& mg, double gamma = 1.0);

// Exact evaluation of a fixed policy pair.
ValueTable PolicyValue(const TabularMG& mg, const MarkovPolicy& mu,
                       const MarkovPolicy& nu, double gamma = 1.0);

struct BestResponse {
  MarkovPolicy policy;  // pure response, lowest-index ties
  ValueTable value;
};

// Min-player best response to mu: V^{mu,+}. Max-player form mirrored.
BestResponse MinBestResponse(const TabularMG& mg, const MarkovPolicy& mu,
                             double gamma = 1.0);
BestResponse MaxBestResponse(const TabularMG& mg, const MarkovPolicy& nu,
                             double gamma = 1.0);

inline constexpr int64_t kDefaultNodeBudget = 10'000'000;

// Exact best-response value at s1 against the behavioral policy induced by a
// max-player mixture, by forward recursion over (state, max-action) histories
// carrying the posterior over components. Throws HistoryBudgetExceededError
// when the history tree exceeds node_budget.
double MinBestResponseValueToMixture(const TabularMG& mg,
                                     const MixturePolicy& max_mixture,
                                     double gamma = 1.0,
                                     int64_t node_budget = kDefaultNodeBudget);
// Mirrored: max-player best-response value against a min-player mixture.
double MaxBestResponseValueToMixture(const TabularMG& mg,
                                     const MixturePolicy& min_mixture,
                                     double gamma = 1.0,
                                     int64_t node_budget = kDefaultNodeBudget);

// V^{+,nu}(s1) - V^{mu,+}(s1), computed exactly; accepts a Markov policy or a
// mixture on each side.
double Exploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                      const SidePolicy& nu_hat, double gamma = 1.0,
                      int64_t node_budget = kDefaultNodeBudget);

// Player-swapped view of the game (rewards negated, action roles exchanged).
TabularMG TransposeGame(const TabularMG& mg);

}  // namespace nashmg

#endif  // NASHMG_EXACT_ORACLE_H_
