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

#include "nashmg/exact_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nashmg {
namespace {

constexpr double kStageSolveTol = 1e-8;

void CheckMaxPolicy(const TabularMG& mg, const MarkovPolicy& mu) {
  if (mu.horizon != mg.horizon || mu.num_states != mg.num_states ||
      mu.num_actions != mg.num_actions_max) {
    throw DimensionMismatchError("max-player policy does not match game");
  }
}

void CheckMinPolicy(const TabularMG& mg, const MarkovPolicy& nu) {
  if (nu.horizon != mg.horizon || nu.num_states != mg.num_states ||
      nu.num_actions != mg.num_actions_min) {
    throw DimensionMismatchError("min-player policy does not match game");
  }
}

// Expected next-step value for (h, s, a, b); zero at the last step.
inline double Bootstrap(const TabularMG& mg, const ValueTable& v, int h, int s,
                        int a, int b, double gamma) {
  if (h == mg.horizon - 1) return 0.0;
  double acc = 0.0;
  std::span<const double> row = mg.TransitionRow(h, s, a, b);
  for (int s2 = 0; s2 < mg.num_states; ++s2) {
    acc += row[s2] * v.At(h + 1, s2);
  }
  return gamma * acc;
}

class MixtureBrSolver {
 public:
  MixtureBrSolver(const TabularMG& mg, const MixturePolicy& mix, double gamma,
                  int64_t budget)
      : mg_(mg), mix_(mix), gamma_(gamma), budget_(budget) {}

  double Solve() {
    // Worst-case history tree size (S*A)^H.
    double bound = 1.0;
    for (int h = 0; h < mg_.horizon; ++h) {
      bound *= static_cast<double>(mg_.num_states) * mg_.num_actions_max;
      if (bound > static_cast<double>(budget_)) {
        throw HistoryBudgetExceededError(
            "mixture best response needs more than " +
            std::to_string(budget_) + " history nodes");
      }
    }
    std::vector<double> w = mix_.meta.probs;
    return Value(0, mg_.initial_state, w);
  }

 private:
  // Value at a history node: step h, state s, unnormalized posterior w over
  // mixture components (reach likelihood of the max player's past actions).
  double Value(int h, int s, const std::vector<double>& w) {
    if (++nodes_ > budget_) {
      throw HistoryBudgetExceededError("mixture best response node budget");
    }
    const int num_comp = static_cast<int>(mix_.components.size());
    const int na = mg_.num_actions_max;
    const int nb = mg_.num_actions_min;

    std::vector<double> pa(na, 0.0);
    double total = 0.0;
    for (int i = 0; i < num_comp; ++i) {
      if (w[i] <= 0.0) continue;
      std::span<const double> row = mix_.components[i].Row(h, s);
      for (int a = 0; a < na; ++a) pa[a] += w[i] * row[a];
    }
    for (int a = 0; a < na; ++a) total += pa[a];
    if (total <= 0.0) return 0.0;  // unreachable branch

    // Child values depend on (a, s') only; posterior update is per action.
    std::vector<double> child;
    if (h < mg_.horizon - 1) {
      child.assign(static_cast<size_t>(na) * mg_.num_states, 0.0);
      std::vector<double> w_next(num_comp);
      for (int a = 0; a < na; ++a) {
        if (pa[a] <= 0.0) continue;
        for (int i = 0; i < num_comp; ++i) {
          w_next[i] =
              w[i] <= 0.0 ? 0.0 : w[i] * mix_.components[i].At(h, s, a);
        }
        for (int s2 = 0; s2 < mg_.num_states; ++s2) {
          child[static_cast<size_t>(a) * mg_.num_states + s2] =
              Value(h + 1, s2, w_next);
        }
      }
    }

    double best = std::numeric_limits<double>::infinity();
    for (int b = 0; b < nb; ++b) {
      double val = 0.0;
      for (int a = 0; a < na; ++a) {
        if (pa[a] <= 0.0) continue;
        double q = mg_.RewardAt(h, s, a, b);
        if (h < mg_.horizon - 1) {
          double acc = 0.0;
          std::span<const double> row = mg_.TransitionRow(h, s, a, b);
          for (int s2 = 0; s2 < mg_.num_states; ++s2) {
            acc += row[s2] * child[static_cast<size_t>(a) * mg_.num_states + s2];
          }
          q += gamma_ * acc;
        }
        val += (pa[a] / total) * q;
      }
      best = std::min(best, val);
    }
    return best;
  }

  const TabularMG& mg_;
  const MixturePolicy& mix_;
  double gamma_;
  int64_t budget_;
  int64_t nodes_ = 0;
};

}  // namespace

PayoffMatrix QTable::StageMatrix(int h, int s) const {
  PayoffMatrix m(num_actions_max, num_actions_min);
  for (int a = 0; a < num_actions_max; ++a) {
    for (int b = 0; b < num_actions_min; ++b) {
      m.At(a, b) = At(h, s, a, b);
    }
  }
  return m;
}

NashSolutionMG ExactNashSolve(const TabularMG& mg, double gamma) {
  NashSolutionMG out;
  out.q_star = QTable(mg.horizon, mg.num_states, mg.num_actions_max,
                      mg.num_actions_min);
  out.v_star = ValueTable(mg.horizon, mg.num_states);
  out.mu_star =
      MarkovPolicy::Uniform(mg.horizon, mg.num_states, mg.num_actions_max);
  out.nu_star =
      MarkovPolicy::Uniform(mg.horizon, mg.num_states, mg.num_actions_min);

  for (int h = mg.horizon - 1; h >= 0; --h) {
    for (int s = 0; s < mg.num_states; ++s) {
      for (int a = 0; a < mg.num_actions_max; ++a) {
        for (int b = 0; b < mg.num_actions_min; ++b) {
          out.q_star.At(h, s, a, b) =
              mg.RewardAt(h, s, a, b) +
              Bootstrap(mg, out.v_star, h, s, a, b, gamma);
        }
      }
      MatrixNashSolution stage =
          SolveLp(out.q_star.StageMatrix(h, s), kStageSolveTol);
      out.mu_star.SetRow(h, s, stage.row_strategy.probs);
      out.nu_star.SetRow(h, s, stage.col_strategy.probs);
      out.v_star.At(h, s) = stage.value;
    }
  }
  return out;
}

ValueTable PolicyValue(const TabularMG& mg, const MarkovPolicy& mu,
                       const MarkovPolicy& nu, double gamma) {
  CheckMaxPolicy(mg, mu);
  CheckMinPolicy(mg, nu);
  ValueTable v(mg.horizon, mg.num_states);
  for (int h = mg.horizon - 1; h >= 0; --h) {
    for (int s = 0; s < mg.num_states; ++s) {
      double acc = 0.0;
      std::span<const double> mrow = mu.Row(h, s);
      std::span<const double> nrow = nu.Row(h, s);
      for (int a = 0; a < mg.num_actions_max; ++a) {
        if (mrow[a] == 0.0) continue;
        for (int b = 0; b < mg.num_actions_min; ++b) {
          if (nrow[b] == 0.0) continue;
          acc += mrow[a] * nrow[b] *
                 (mg.RewardAt(h, s, a, b) +
                  Bootstrap(mg, v, h, s, a, b, gamma));
        }
      }
      v.At(h, s) = acc;
    }
  }
  return v;
}

BestResponse MinBestResponse(const TabularMG& mg, const MarkovPolicy& mu,
                             double gamma) {
  CheckMaxPolicy(mg, mu);
  BestResponse out;
  out.value = ValueTable(mg.horizon, mg.num_states);
  out.policy =
      MarkovPolicy::Uniform(mg.horizon, mg.num_states, mg.num_actions_min);
  for (int h = mg.horizon - 1; h >= 0; --h) {
    for (int s = 0; s < mg.num_states; ++s) {
      std::span<const double> mrow = mu.Row(h, s);
      int best_b = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int b = 0; b < mg.num_actions_min; ++b) {
        double q = 0.0;
        for (int a = 0; a < mg.num_actions_max; ++a) {
          if (mrow[a] == 0.0) continue;
          q += mrow[a] * (mg.RewardAt(h, s, a, b) +
                          Bootstrap(mg, out.value, h, s, a, b, gamma));
        }
        if (q < best) {
          best = q;
          best_b = b;
        }
      }
      out.value.At(h, s) = best;
      MixedStrategy pure = MixedStrategy::PureAt(mg.num_actions_min, best_b);
      out.policy.SetRow(h, s, pure.probs);
    }
  }
  return out;
}

BestResponse MaxBestResponse(const TabularMG& mg, const MarkovPolicy& nu,
                             double gamma) {
  CheckMinPolicy(mg, nu);
  BestResponse out;
  out.value = ValueTable(mg.horizon, mg.num_states);
  out.policy =
      MarkovPolicy::Uniform(mg.horizon, mg.num_states, mg.num_actions_max);
  for (int h = mg.horizon - 1; h >= 0; --h) {
    for (int s = 0; s < mg.num_states; ++s) {
      std::span<const double> nrow = nu.Row(h, s);
      int best_a = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < mg.num_actions_max; ++a) {
        double q = 0.0;
        for (int b = 0; b < mg.num_actions_min; ++b) {
          if (nrow[b] == 0.0) continue;
          q += nrow[b] * (mg.RewardAt(h, s, a, b) +
                          Bootstrap(mg, out.value, h, s, a, b, gamma));
        }
        if (q > best) {
          best = q;
          best_a = a;
        }
      }
      out.value.At(h, s) = best;
      MixedStrategy pure = MixedStrategy::PureAt(mg.num_actions_max, best_a);
      out.policy.SetRow(h, s, pure.probs);
    }
  }
  return out;
}

TabularMG TransposeGame(const TabularMG& mg) {
  TabularMG t;
  t.horizon = mg.horizon;
  t.num_states = mg.num_states;
  t.num_actions_max = mg.num_actions_min;
  t.num_actions_min = mg.num_actions_max;
  t.initial_state = mg.initial_state;
  t.transition.resize(mg.transition.size());
  t.reward.resize(mg.reward.size());
  for (int h = 0; h < mg.horizon; ++h) {
    for (int s = 0; s < mg.num_states; ++s) {
      for (int a = 0; a < mg.num_actions_max; ++a) {
        for (int b = 0; b < mg.num_actions_min; ++b) {
          size_t dst = ((static_cast<size_t>(h) * mg.num_states + s) *
                            mg.num_actions_min +
                        b) *
                           mg.num_actions_max +
                       a;
          t.reward[dst] = -mg.RewardAt(h, s, a, b);
          if (h < mg.horizon - 1) {
            std::span<const double> row = mg.TransitionRow(h, s, a, b);
            for (int s2 = 0; s2 < mg.num_states; ++s2) {
              t.transition[dst * mg.num_states + s2] = row[s2];
            }
          }
        }
      }
    }
  }
  return t;
}

double MinBestResponseValueToMixture(const TabularMG& mg,
                                     const MixturePolicy& max_mixture,
                                     double gamma, int64_t node_budget) {
  max_mixture.Validate();
  for (const auto& c : max_mixture.components) CheckMaxPolicy(mg, c);
  return MixtureBrSolver(mg, max_mixture, gamma, node_budget).Solve();
}

double MaxBestResponseValueToMixture(const TabularMG& mg,
                                     const MixturePolicy& min_mixture,
                                     double gamma, int64_t node_budget) {
  min_mixture.Validate();
  for (const auto& c : min_mixture.components) CheckMinPolicy(mg, c);
  TabularMG swapped = TransposeGame(mg);
  return -MixtureBrSolver(swapped, min_mixture, gamma, node_budget).Solve();
}

double Exploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                      const SidePolicy& nu_hat, double gamma,
                      int64_t node_budget) {
  SidePolicy mu = SimplifySide(mu_hat);
  SidePolicy nu = SimplifySide(nu_hat);

  double v_mu_dagger;  // min best-responds to the max side
  if (const auto* mp = std::get_if<MarkovPolicy>(&mu)) {
    v_mu_dagger =
        MinBestResponse(mg, *mp, gamma).value.At(0, mg.initial_state);
  } else {
    v_mu_dagger = MinBestResponseValueToMixture(
        mg, std::get<MixturePolicy>(mu), gamma, node_budget);
  }
  double v_dagger_nu;  // max best-responds to the min side
  if (const auto* np = std::get_if<MarkovPolicy>(&nu)) {
    v_dagger_nu =
        MaxBestResponse(mg, *np, gamma).value.At(0, mg.initial_state);
  } else {
    v_dagger_nu = MaxBestResponseValueToMixture(
        mg, std::get<MixturePolicy>(nu), gamma, node_budget);
  }
  return v_dagger_nu - v_mu_dagger;
}

}  // namespace nashmg
