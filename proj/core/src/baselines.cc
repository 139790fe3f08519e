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

#include "nashmg/baselines.h"

#include <algorithm>
#include <limits>

#include "nashmg/matrix_game.h"

namespace nashmg {
namespace {

enum class MetaRule { kLastOneHot, kUniform, kMetaNash };

MixedStrategy OneHotLast(int n) { return MixedStrategy::PureAt(n, n - 1); }

int GreedyAction(std::span<const double> q_row) {
  return static_cast<int>(std::max_element(q_row.begin(), q_row.end()) -
                          q_row.begin());
}

// Shared iteration skeleton of SP / FSP / DO; they differ only in the meta
// update applied after a best-response append.
BaselineResult IterativeBrTrain(const TabularMG& env,
                                const BaselineOptions& opts, MetaRule rule,
                                Rng& rng) {
  env.Validate();
  BaselineResult res;
  res.max_set.owner = PlayerRole::kMaxPlayer;
  res.min_set.owner = PlayerRole::kMinPlayer;
  res.max_set.policies.push_back(
      MarkovPolicy::Uniform(env.horizon, env.num_states, env.num_actions_max));
  res.min_set.policies.push_back(
      MarkovPolicy::Uniform(env.horizon, env.num_states, env.num_actions_min));
  res.max_meta.weights = MixedStrategy{{1.0}};
  res.min_meta.weights = MixedStrategy{{1.0}};

  if (opts.hook) opts.hook(0, res);

  for (int64_t t = 1; res.episodes_used < opts.episode_budget; ++t) {
    BrConfig br = opts.br;
    br.gamma = opts.gamma;
    br.episodes =
        std::min(br.episodes, opts.episode_budget - res.episodes_used);
    const bool update_max = (t % 2 == 1);
    if (update_max) {
      res.max_set.policies.push_back(
          QLearningBestResponse(env, res.min_set, res.min_meta, br, rng));
    } else {
      res.min_set.policies.push_back(
          QLearningBestResponse(env, res.max_set, res.max_meta, br, rng));
    }
    res.episodes_used += br.episodes;

    MetaStrategy* own = update_max ? &res.max_meta : &res.min_meta;
    int own_size = update_max ? static_cast<int>(res.max_set.policies.size())
                              : static_cast<int>(res.min_set.policies.size());
    switch (rule) {
      case MetaRule::kLastOneHot:
        own->weights = OneHotLast(own_size);
        break;
      case MetaRule::kUniform:
        own->weights = MixedStrategy::Uniform(own_size);
        break;
      case MetaRule::kMetaNash: {
        int64_t pairings =
            static_cast<int64_t>(res.max_set.policies.size()) *
            res.min_set.policies.size();
        auto [rho_mu, rho_nu] = MetaNash(env, res.max_set, res.min_set,
                                         opts.meta_eval_episodes, opts.gamma,
                                         rng);
        res.episodes_used += pairings * opts.meta_eval_episodes;
        *own = update_max ? rho_mu : rho_nu;
        break;
      }
    }
    if (opts.hook) opts.hook(res.episodes_used, res);
  }
  return res;
}

}  // namespace

MixturePolicy ToMixture(const PolicySet& set, const MetaStrategy& meta) {
  MixturePolicy mix;
  mix.components = set.policies;
  mix.meta = meta.weights;
  mix.Validate();
  return mix;
}

SidePolicy BaselineResult::MaxDeliverable() const {
  return SimplifySide(ToMixture(max_set, max_meta));
}

SidePolicy BaselineResult::MinDeliverable() const {
  return SimplifySide(ToMixture(min_set, min_meta));
}

MarkovPolicy QLearningBestResponse(const TabularMG& env,
                                   const PolicySet& opponent,
                                   const MetaStrategy& meta,
                                   const BrConfig& config, Rng& rng) {
  if (config.episodes < 1) {
    throw InvariantViolationError("best-response episode budget must be >= 1");
  }
  if (opponent.policies.empty() ||
      meta.weights.size() != static_cast<int>(opponent.policies.size())) {
    throw DimensionMismatchError("opponent set and meta weights mismatch");
  }
  const bool learner_is_max = (opponent.owner == PlayerRole::kMinPlayer);
  const int own_actions =
      learner_is_max ? env.num_actions_max : env.num_actions_min;
  const int opp_actions =
      learner_is_max ? env.num_actions_min : env.num_actions_max;
  for (const auto& p : opponent.policies) {
    if (p.horizon != env.horizon || p.num_states != env.num_states ||
        p.num_actions != opp_actions) {
      throw DimensionMismatchError("opponent policy does not match game");
    }
  }

  // Single-agent Q over (h, s, own action).
  MarkovPolicy q;  // reused as a plain [H][S][own] table
  q.horizon = env.horizon;
  q.num_states = env.num_states;
  q.num_actions = own_actions;
  q.probs.assign(
      static_cast<size_t>(env.horizon) * env.num_states * own_actions, 0.0);

  Simulator sim(env);
  for (int64_t k = 0; k < config.episodes; ++k) {
    const MarkovPolicy& opp =
        opponent.policies[rng.SampleCategorical(meta.weights.probs)];
    double eps = config.schedule.At(k);
    int s = sim.Reset();
    for (int t = 0; t < env.horizon; ++t) {
      int opp_action = rng.SampleCategorical(opp.Row(t, s));
      int own_action = rng.Uniform() < eps ? rng.UniformInt(own_actions)
                                           : GreedyAction(q.Row(t, s));
      int a = learner_is_max ? own_action : opp_action;
      int b = learner_is_max ? opp_action : own_action;
      TransitionSample sample = sim.Step(a, b, rng);
      double r_own = learner_is_max ? sample.r : -sample.r;
      double target = r_own;
      if (!sample.done) {
        std::span<const double> next = q.Row(t + 1, sample.s_next);
        target +=
            config.gamma * *std::max_element(next.begin(), next.end());
      }
      double& cell = q.At(t, s, own_action);
      cell = config.alpha * target + (1.0 - config.alpha) * cell;
      s = sample.s_next;
    }
  }

  MarkovPolicy greedy =
      MarkovPolicy::Uniform(env.horizon, env.num_states, own_actions);
  for (int h = 0; h < env.horizon; ++h) {
    for (int s = 0; s < env.num_states; ++s) {
      MixedStrategy pure =
          MixedStrategy::PureAt(own_actions, GreedyAction(q.Row(h, s)));
      greedy.SetRow(h, s, pure.probs);
    }
  }
  return greedy;
}

std::pair<MetaStrategy, MetaStrategy> MetaNash(const TabularMG& env,
                                               const PolicySet& set_mu,
                                               const PolicySet& set_nu,
                                               int64_t eval_episodes,
                                               double gamma, Rng& rng) {
  if (eval_episodes < 1) {
    throw InvariantViolationError("meta evaluation episodes must be >= 1");
  }
  const int m = static_cast<int>(set_mu.policies.size());
  const int n = static_cast<int>(set_nu.policies.size());
  if (m == 0 || n == 0) {
    throw InvariantViolationError("meta-Nash needs nonempty policy sets");
  }
  PayoffMatrix payoff(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int64_t k = 0; k < eval_episodes; ++k) {
        sum += Rollout(env, set_mu.policies[i], set_nu.policies[j], gamma, rng)
                   .ret;
      }
      payoff.At(i, j) = sum / eval_episodes;
    }
  }
  MatrixNashSolution sol = SolveLp(payoff);
  return {MetaStrategy{sol.row_strategy}, MetaStrategy{sol.col_strategy}};
}

BaselineResult SelfPlayTrain(const TabularMG& env, const BaselineOptions& opts,
                             Rng& rng) {
  return IterativeBrTrain(env, opts, MetaRule::kLastOneHot, rng);
}

BaselineResult FspTrain(const TabularMG& env, const BaselineOptions& opts,
                        Rng& rng) {
  return IterativeBrTrain(env, opts, MetaRule::kUniform, rng);
}

BaselineResult DoTrain(const TabularMG& env, const BaselineOptions& opts,
                       Rng& rng) {
  return IterativeBrTrain(env, opts, MetaRule::kMetaNash, rng);
}

}  // namespace nashmg
