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

#include "nashmg/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nashmg {
namespace {

constexpr double kStageSolveTol = 1e-8;

// Lazily solved per-(h, s) stage equilibria of a Q table, with dirty
// tracking so repeated behavior-policy queries between updates are cheap.
class StageNashCache {
 public:
  explicit StageNashCache(const QTable* q)
      : q_(q),
        dirty_(static_cast<size_t>(q->horizon) * q->num_states, 1),
        sol_(static_cast<size_t>(q->horizon) * q->num_states) {}

  const MatrixNashSolution& Get(int h, int s) {
    size_t idx = static_cast<size_t>(h) * q_->num_states + s;
    if (dirty_[idx]) {
      sol_[idx] = SolveLp(q_->StageMatrix(h, s), kStageSolveTol);
      dirty_[idx] = 0;
    }
    return sol_[idx];
  }

  void Invalidate(int h, int s) {
    dirty_[static_cast<size_t>(h) * q_->num_states + s] = 1;
  }
  void InvalidateAll() { std::fill(dirty_.begin(), dirty_.end(), 1); }

 private:
  const QTable* q_;
  std::vector<char> dirty_;
  std::vector<MatrixNashSolution> sol_;
};

struct JointAction {
  int a;
  int b;
};

JointAction EpsilonGreedyJoint(const MatrixNashSolution& nash, double eps,
                               int na, int nb, Rng& rng) {
  if (rng.Uniform() < eps) {
    return {rng.UniformInt(na), rng.UniformInt(nb)};
  }
  return {rng.SampleCategorical(nash.row_strategy.probs),
          rng.SampleCategorical(nash.col_strategy.probs)};
}

int ArgminExploiterAction(const QTable& q_tilde,
                          std::span<const double> mu_row, int h, int s) {
  int best_b = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int b = 0; b < q_tilde.num_actions_min; ++b) {
    double v = 0.0;
    for (int a = 0; a < q_tilde.num_actions_max; ++a) {
      v += mu_row[a] * q_tilde.At(h, s, a, b);
    }
    if (v < best) {
      best = v;
      best_b = b;
    }
  }
  return best_b;
}

void MaybeEval(const LearnerOptions& opts, const LearnerState& state,
               int64_t episode) {
  if (!opts.hook || opts.eval_every <= 0) return;
  if (episode != 0 && episode % opts.eval_every != 0 &&
      episode != opts.episodes) {
    return;
  }
  auto [mu, nu] = ExtractPolicy(state);
  opts.hook(episode, mu, nu);
}

// Full model rebuild and backward sweep over the main Q (Nash value
// iteration backup), optionally also sweeping the exploiter table.
void FullSweep(const TabularMG& env, const LearnerOptions& opts,
               LearnerState* state, StageNashCache* cache) {
  const int H = env.horizon;
  const int S = env.num_states;
  const int A = env.num_actions_max;
  const int B = env.num_actions_min;
  const bool with_exploiter = state->q_tilde.has_value();

  ValueTable v_nash(H, S);
  ValueTable v_exploit(H, S);

  for (int h = H - 1; h >= 0; --h) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        for (int b = 0; b < B; ++b) {
          double r_hat = state->model.EstimatedReward(h, s, a, b);
          double boot = 0.0;
          double boot_exploit = 0.0;
          if (h < H - 1) {
            std::vector<double> p_hat =
                state->model.EstimatedTransition(h, s, a, b);
            for (int s2 = 0; s2 < S; ++s2) {
              boot += p_hat[s2] * v_nash.At(h + 1, s2);
              if (with_exploiter) {
                boot_exploit += p_hat[s2] * v_exploit.At(h + 1, s2);
              }
            }
          }
          state->q.At(h, s, a, b) = r_hat + opts.gamma * boot;
          if (with_exploiter) {
            state->q_tilde->At(h, s, a, b) =
                r_hat + opts.gamma * boot_exploit;
          }
        }
      }
    }
    // Stage equilibria of the freshly updated Q at step h feed step h-1.
    for (int s = 0; s < S; ++s) {
      MatrixNashSolution stage =
          SolveLp(state->q.StageMatrix(h, s), kStageSolveTol);
      v_nash.At(h, s) = stage.value;
      if (with_exploiter) {
        double best = std::numeric_limits<double>::infinity();
        for (int b = 0; b < B; ++b) {
          double v = 0.0;
          for (int a = 0; a < A; ++a) {
            v += stage.row_strategy.probs[a] * state->q_tilde->At(h, s, a, b);
          }
          best = std::min(best, v);
        }
        v_exploit.At(h, s) = best;
      }
    }
  }
  cache->InvalidateAll();
}

LearnerState NashViTrainImpl(const TabularMG& env, const LearnerOptions& opts,
                             Rng& rng, bool with_exploiter) {
  env.Validate();
  const int H = env.horizon;
  LearnerState state;
  state.q = QTable(H, env.num_states, env.num_actions_max,
                   env.num_actions_min);
  if (with_exploiter) {
    state.q_tilde = QTable(H, env.num_states, env.num_actions_max,
                           env.num_actions_min);
  }
  state.model = EmpiricalModel(H, env.num_states, env.num_actions_max,
                               env.num_actions_min);
  StageNashCache cache(&state.q);

  const int64_t update_interval =
      opts.update_interval > 0 ? opts.update_interval : 100LL * H;
  Simulator sim(env);
  int64_t stored = 0;

  MaybeEval(opts, state, 0);
  for (int64_t k = 0; k < opts.episodes; ++k) {
    double eps = opts.schedule.At(k);
    int s = sim.Reset();
    for (int t = 0; t < H; ++t) {
      const MatrixNashSolution& nash = cache.Get(t, s);
      JointAction act{};
      if (with_exploiter) {
        if (rng.Uniform() < eps) {
          act = {rng.UniformInt(env.num_actions_max),
                 rng.UniformInt(env.num_actions_min)};
        } else {
          act.a = rng.SampleCategorical(nash.row_strategy.probs);
          act.b = ArgminExploiterAction(*state.q_tilde,
                                        nash.row_strategy.probs, t, s);
        }
      } else {
        act = EpsilonGreedyJoint(nash, eps, env.num_actions_max,
                                 env.num_actions_min, rng);
      }
      TransitionSample sample = sim.Step(act.a, act.b, rng);
      state.model.AddSample(sample);
      ++stored;
      if (stored % update_interval == 0) {
        FullSweep(env, opts, &state, &cache);
      }
      s = sample.s_next;
    }
    state.episodes_seen = k + 1;
    MaybeEval(opts, state, k + 1);
  }
  return state;
}

}  // namespace

double EpsilonSchedule::At(int64_t t) const {
  double eps = mode == Mode::kConstant
                   ? eps0
                   : eps1 + (eps0 - eps1) * std::exp(-static_cast<double>(t) /
                                                     p);
  return std::clamp(eps, 0.0, 1.0);
}

EpsilonSchedule EpsilonSchedule::Constant(double eps) {
  EpsilonSchedule s;
  s.eps0 = eps;
  s.mode = Mode::kConstant;
  return s;
}

EpsilonSchedule EpsilonSchedule::Exponential(double eps0, double eps1,
                                             double p) {
  EpsilonSchedule s;
  s.eps0 = eps0;
  s.eps1 = eps1;
  s.p = p;
  s.mode = Mode::kExponential;
  return s;
}

EmpiricalModel::EmpiricalModel(int horizon, int num_states,
                               int num_actions_max, int num_actions_min)
    : horizon(horizon),
      num_states(num_states),
      num_actions_max(num_actions_max),
      num_actions_min(num_actions_min),
      visit_counts(static_cast<size_t>(horizon) * num_states *
                       num_actions_max * num_actions_min,
                   0),
      next_counts(static_cast<size_t>(std::max(horizon - 1, 0)) * num_states *
                      num_actions_max * num_actions_min * num_states,
                  0),
      reward_sums(visit_counts.size(), 0.0) {}

void EmpiricalModel::AddSample(const TransitionSample& sample) {
  size_t idx = ((static_cast<size_t>(sample.h) * num_states + sample.s) *
                    num_actions_max +
                sample.a) *
                   num_actions_min +
               sample.b;
  ++visit_counts[idx];
  reward_sums[idx] += sample.r;
  if (!sample.done) {
    next_counts[idx * num_states + sample.s_next] += 1;
  }
}

int64_t EmpiricalModel::VisitCount(int h, int s, int a, int b) const {
  return visit_counts[((static_cast<size_t>(h) * num_states + s) *
                           num_actions_max +
                       a) *
                          num_actions_min +
                      b];
}

std::vector<double> EmpiricalModel::EstimatedTransition(int h, int s, int a,
                                                        int b) const {
  std::vector<double> row(num_states, 1.0 / num_states);
  size_t idx = ((static_cast<size_t>(h) * num_states + s) * num_actions_max +
                a) *
                   num_actions_min +
               b;
  int64_t n = visit_counts[idx];
  if (n > 0) {
    for (int s2 = 0; s2 < num_states; ++s2) {
      row[s2] = static_cast<double>(next_counts[idx * num_states + s2]) / n;
    }
  }
  return row;
}

double EmpiricalModel::EstimatedReward(int h, int s, int a, int b) const {
  size_t idx = ((static_cast<size_t>(h) * num_states + s) * num_actions_max +
                a) *
                   num_actions_min +
               b;
  int64_t n = visit_counts[idx];
  return n > 0 ? reward_sums[idx] / n : 0.0;
}

LearnerState NashViTrain(const TabularMG& env, const LearnerOptions& opts,
                         Rng& rng) {
  return NashViTrainImpl(env, opts, rng, /*with_exploiter=*/false);
}

LearnerState NashViExploiterTrain(const TabularMG& env,
                                  const LearnerOptions& opts, Rng& rng) {
  return NashViTrainImpl(env, opts, rng, /*with_exploiter=*/true);
}

LearnerState NashQLearningTrain(const TabularMG& env,
                                const LearnerOptions& opts, Rng& rng) {
  env.Validate();
  if (opts.alpha < 0.0 || opts.alpha > 1.0) {
    throw InvariantViolationError("alpha must lie in [0, 1]");
  }
  const int H = env.horizon;
  LearnerState state;
  state.q = QTable(H, env.num_states, env.num_actions_max,
                   env.num_actions_min);
  StageNashCache cache(&state.q);
  Simulator sim(env);

  MaybeEval(opts, state, 0);
  for (int64_t k = 0; k < opts.episodes; ++k) {
    double eps = opts.schedule.At(k);
    int s = sim.Reset();
    for (int t = 0; t < H; ++t) {
      JointAction act = EpsilonGreedyJoint(
          cache.Get(t, s), eps, env.num_actions_max, env.num_actions_min, rng);
      TransitionSample sample = sim.Step(act.a, act.b, rng);
      double target = sample.r;
      if (!sample.done) {
        const MatrixNashSolution& next = cache.Get(t + 1, sample.s_next);
        double nash_value = 0.0;
        for (int a = 0; a < env.num_actions_max; ++a) {
          for (int b = 0; b < env.num_actions_min; ++b) {
            nash_value += next.row_strategy.probs[a] *
                          next.col_strategy.probs[b] *
                          state.q.At(t + 1, sample.s_next, a, b);
          }
        }
        target += opts.gamma * nash_value;
      }
      double& cell = state.q.At(t, s, act.a, act.b);
      cell = opts.alpha * target + (1.0 - opts.alpha) * cell;
      cache.Invalidate(t, s);
      s = sample.s_next;
    }
    state.episodes_seen = k + 1;
    MaybeEval(opts, state, k + 1);
  }
  return state;
}

std::pair<MarkovPolicy, MarkovPolicy> ExtractPolicy(
    const LearnerState& state) {
  const QTable& q = state.q;
  MarkovPolicy mu =
      MarkovPolicy::Uniform(q.horizon, q.num_states, q.num_actions_max);
  MarkovPolicy nu =
      MarkovPolicy::Uniform(q.horizon, q.num_states, q.num_actions_min);
  for (int h = 0; h < q.horizon; ++h) {
    for (int s = 0; s < q.num_states; ++s) {
      MatrixNashSolution stage = SolveLp(q.StageMatrix(h, s), kStageSolveTol);
      mu.SetRow(h, s, stage.row_strategy.probs);
      nu.SetRow(h, s, stage.col_strategy.probs);
    }
  }
  return {std::move(mu), std::move(nu)};
}

}  // namespace nashmg
