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
// Sample-based equilibrium learners: epsilon-greedy Nash value iteration,
// Nash value iteration with an exploiter opponent, and Nash Q-learning.

#ifndef NASHMG_LEARNERS_H_
#define NASHMG_LEARNERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "nashmg/exact_oracle.h"
#include "nashmg/markov_game.h"
#include "nashmg/rng.h"

namespace nashmg {

struct EpsilonSchedule {
  enum class Mode { kConstant, kExponential };

  double eps0 = 0.5;
  double eps1 = 0.0;
  double p = 8000.0;  // decay scale, in episodes
  Mode mode = Mode::kConstant;

  // eps(t) = eps1 + (eps0 - eps1) * exp(-t / p) in exponential mode.
  double At(int64_t t) const;

  static EpsilonSchedule Constant(double eps);
  static EpsilonSchedule Exponential(double eps0, double eps1, double p);
};

// Visit counts and reward sums from which P~ and r~ are rebuilt. Unvisited
// cells estimate as uniform transition and zero reward.
struct EmpiricalModel {
  int horizon = 0;
  int num_states = 0;
  int num_actions_max = 0;
  int num_actions_min = 0;
  std::vector<int64_t> visit_counts;  // [H][S][A][B]
  std::vector<int64_t> next_counts;   // [H-1][S][A][B][S]
  std::vector<double> reward_sums;    // [H][S][A][B]

  EmpiricalModel() = default;
  EmpiricalModel(int horizon, int num_states, int num_actions_max,
                 int num_actions_min);

  void AddSample(const TransitionSample& sample);
  int64_t VisitCount(int h, int s, int a, int b) const;
  // Estimated transition row at (h, s, a, b), uniform when unvisited.
  std::vector<double> EstimatedTransition(int h, int s, int a, int b) const;
  double EstimatedReward(int h, int s, int a, int b) const;
};

struct LearnerState {
  QTable q;
  std::optional<QTable> q_tilde;  // exploiter table, exploiter variant only
  EmpiricalModel model;           // empty for model-free learners
  int64_t episodes_seen = 0;
};

using EvalHook = std::function<void(int64_t episode, const MarkovPolicy& mu,
                                    const MarkovPolicy& nu)>;

struct LearnerOptions {
  int64_t episodes = 50000;
  EpsilonSchedule schedule = EpsilonSchedule::Constant(0.5);
  int64_t update_interval = 0;  // samples between sweeps; 0 means 100 * H
  double alpha = 0.1;           // Nash Q-learning step size
  double gamma = 1.0;
  int64_t eval_every = 0;  // 0 disables the hook
  EvalHook hook;
};

LearnerState NashViTrain(const TabularMG& env, const LearnerOptions& opts,
                         Rng& rng);
LearnerState NashViExploiterTrain(const TabularMG& env,
                                  const LearnerOptions& opts, Rng& rng);
LearnerState NashQLearningTrain(const TabularMG& env,
                                const LearnerOptions& opts, Rng& rng);

// Per-(h, s) LP equilibrium of the learned Q.
std::pair<MarkovPolicy, MarkovPolicy> ExtractPolicy(const LearnerState& state);

}  // namespace nashmg

#endif  // NASHMG_LEARNERS_H_
