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
// Best-response-based baselines: self-play, fictitious self-play and double
// oracle, built on a Q-learning best-response subroutine and Monte-Carlo
// meta-game estimation.

#ifndef NASHMG_BASELINES_H_
#define NASHMG_BASELINES_H_

#include <cstdint>
#include <functional>

#include "nashmg/learners.h"
#include "nashmg/markov_game.h"

namespace nashmg {

enum class PlayerRole { kMaxPlayer, kMinPlayer };

struct PolicySet {
  std::vector<MarkovPolicy> policies;
  PlayerRole owner = PlayerRole::kMaxPlayer;
};

struct MetaStrategy {
  MixedStrategy weights;
};

MixturePolicy ToMixture(const PolicySet& set, const MetaStrategy& meta);

struct BrConfig {
  int64_t episodes = 1000;
  double alpha = 0.1;
  EpsilonSchedule schedule = EpsilonSchedule::Exponential(1.0, 0.0, 8000.0);
  double gamma = 1.0;
};

// Single-agent epsilon-greedy Q-learning against a fixed opponent mixture
// (one component sampled per episode); returns the greedy policy of the
// final Q, lowest-index ties.
MarkovPolicy QLearningBestResponse(const TabularMG& env,
                                   const PolicySet& opponent,
                                   const MetaStrategy& meta,
                                   const BrConfig& config, Rng& rng);

// Mean-return payoff matrix over all pairings (eval_episodes rollouts each),
// solved by LP for both meta strategies.
std::pair<MetaStrategy, MetaStrategy> MetaNash(const TabularMG& env,
                                               const PolicySet& set_mu,
                                               const PolicySet& set_nu,
                                               int64_t eval_episodes,
                                               double gamma, Rng& rng);

struct BaselineResult {
  PolicySet max_set;
  PolicySet min_set;
  MetaStrategy max_meta;
  MetaStrategy min_meta;
  int64_t episodes_used = 0;

  SidePolicy MaxDeliverable() const;
  SidePolicy MinDeliverable() const;
};

// Invoked with the cumulative environment-episode count after each completed
// best-response phase (and once at zero episodes).
using BaselineEvalHook =
    std::function<void(int64_t episodes_used, const BaselineResult& current)>;

struct BaselineOptions {
  int64_t episode_budget = 50000;  // all environment episodes count
  BrConfig br;
  int64_t meta_eval_episodes = 20;  // double oracle only
  double gamma = 1.0;
  BaselineEvalHook hook;
};

BaselineResult SelfPlayTrain(const TabularMG& env, const BaselineOptions& opts,
                             Rng& rng);
BaselineResult FspTrain(const TabularMG& env, const BaselineOptions& opts,
                        Rng& rng);
BaselineResult DoTrain(const TabularMG& env, const BaselineOptions& opts,
                       Rng& rng);

}  // namespace nashmg

#endif  // NASHMG_BASELINES_H_
