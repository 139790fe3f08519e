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

#ifndef NASHMG_MARKOV_GAME_H_
#define NASHMG_MARKOV_GAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nashmg/errors.h"
#include "nashmg/matrix_game.h"
#include "nashmg/rng.h"

namespace nashmg {

// Finite-horizon two-player zero-sum Markov game. Steps are 0-indexed
// internally, h in [0, H). Rewards are stated for the max player and lie in
// [-1, 1]. Transitions exist for h in [0, H-1); step H-1 is terminal.
struct TabularMG {
  int horizon = 0;          // H
  int num_states = 0;       // S
  int num_actions_max = 0;  // A
  int num_actions_min = 0;  // B
  int initial_state = 0;
  std::vector<double> transition;  // [H-1][S][A][B][S]
  std::vector<double> reward;      // [H][S][A][B]

  double TransitionAt(int h, int s, int a, int b, int s_next) const {
    return transition[(((static_cast<size_t>(h) * num_states + s) *
                            num_actions_max +
                        a) *
                           num_actions_min +
                       b) *
                          num_states +
                      s_next];
  }
  std::span<const double> TransitionRow(int h, int s, int a, int b) const {
    size_t base = (((static_cast<size_t>(h) * num_states + s) *
                        num_actions_max +
                    a) *
                       num_actions_min +
                   b) *
                  num_states;
    return {transition.data() + base, static_cast<size_t>(num_states)};
  }
  double RewardAt(int h, int s, int a, int b) const {
    return reward[((static_cast<size_t>(h) * num_states + s) *
                       num_actions_max +
                   a) *
                      num_actions_min +
                  b];
  }

  // Throws InvariantViolationError on bad shapes, non-stochastic rows,
  // rewards outside [-1, 1] or non-finite values.
  void Validate() const;
};

// Per-step stochastic policy table for one player: probs[h][s] in the action
// simplex.
struct MarkovPolicy {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> probs;  // [H][S][A]

  double At(int h, int s, int a) const {
    return probs[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
  }
  double& At(int h, int s, int a) {
    return probs[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
  }
  std::span<const double> Row(int h, int s) const {
    size_t base = (static_cast<size_t>(h) * num_states + s) * num_actions;
    return {probs.data() + base, static_cast<size_t>(num_actions)};
  }
  void SetRow(int h, int s, std::span<const double> p) {
    size_t base = (static_cast<size_t>(h) * num_states + s) * num_actions;
    for (int a = 0; a < num_actions; ++a) probs[base + a] = p[a];
  }

  static MarkovPolicy Uniform(int horizon, int num_states, int num_actions);
  void Validate() const;
};

// Distribution over Markov policies, sampled once per episode. Its exact best
// response is generally non-Markovian.
struct MixturePolicy {
  std::vector<MarkovPolicy> components;
  MixedStrategy meta;

  void Validate() const;
};

// One side's deliverable policy: plain Markov or a mixture.
using SidePolicy = std::variant<MarkovPolicy, MixturePolicy>;

// Wraps a Markov policy as a singleton mixture; collapses a one-hot mixture
// back to its single live component.
MixturePolicy AsMixture(const SidePolicy& side);
SidePolicy SimplifySide(const SidePolicy& side);

struct TransitionSample {
  int h = 0;  // 0-indexed step
  int s = 0;
  int a = 0;
  int b = 0;
  double r = 0.0;
  bool done = false;  // true iff h == H-1
  int s_next = 0;     // undefined when done
};

// Each transition row is S i.i.d. uniform[0,1] draws normalized to sum one;
// each reward entry is i.i.d. uniform[-1,1]. Fully determined by the seed.
TabularMG GenerateRandomMg(int num_states, int num_actions_max,
                           int num_actions_min, int horizon, uint64_t seed);

struct RolloutResult {
  std::vector<TransitionSample> trajectory;
  double ret = 0.0;  // sum_h gamma^h r_h
};

RolloutResult Rollout(const TabularMG& mg, const MarkovPolicy& mu,
                      const MarkovPolicy& nu, double gamma, Rng& rng);

// Sample-access view of a TabularMG: the step interface learners interact
// through without reading P or r.
class Simulator {
 public:
  explicit Simulator(const TabularMG& mg) : mg_(mg) {}

  int horizon() const { return mg_.horizon; }
  int num_states() const { return mg_.num_states; }
  int num_actions_max() const { return mg_.num_actions_max; }
  int num_actions_min() const { return mg_.num_actions_min; }

  // Returns the initial state.
  int Reset();
  TransitionSample Step(int a, int b, Rng& rng);

 private:
  const TabularMG& mg_;
  int h_ = 0;
  int state_ = 0;
};

// Environment file format: single JSON record with fields S, A, B, H,
// initial_state, transition[h][s][a][b][s'], reward[h][s][a][b].
std::string SerializeMg(const TabularMG& mg);
TabularMG DeserializeMg(const std::string& text);
void WriteMgFile(const std::string& path, const TabularMG& mg);
TabularMG ReadMgFile(const std::string& path);

// Policy pair files: {"max": ..., "min": ...} where each side is either
// {"type": "markov", "probs": [h][s][a]} or
// {"type": "mixture", "components": [...], "meta": [...]}.
std::string SerializePolicyPair(const SidePolicy& max_side,
                                const SidePolicy& min_side);
std::pair<SidePolicy, SidePolicy> DeserializePolicyPair(
    const std::string& text);
void WritePolicyFile(const std::string& path, const SidePolicy& max_side,
                     const SidePolicy& min_side);
std::pair<SidePolicy, SidePolicy> ReadPolicyFile(const std::string& path);

}  // namespace nashmg

#endif  // NASHMG_MARKOV_GAME_H_
