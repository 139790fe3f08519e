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

#include <cmath>

#include "doctest.h"
#include "nashmg/exact_oracle.h"
#include "nashmg/markov_game.h"

namespace nashmg {
namespace {

TEST_CASE("EpsilonSchedule modes") {
  EpsilonSchedule constant = EpsilonSchedule::Constant(0.5);
  CHECK(constant.At(0) == 0.5);
  CHECK(constant.At(1000000) == 0.5);

  EpsilonSchedule expo = EpsilonSchedule::Exponential(1.0, 0.0, 8000.0);
  CHECK(expo.At(0) == doctest::Approx(1.0));
  CHECK(expo.At(8000) == doctest::Approx(std::exp(-1.0)));
  CHECK(expo.At(0) >= expo.At(100));
  CHECK(expo.At(100) >= expo.At(10000));
  CHECK(expo.At(100000000) >= 0.0);
}

TEST_CASE("EmpiricalModel defaults and convergence") {
  EmpiricalModel model(2, 2, 2, 2);
  CHECK(model.VisitCount(0, 0, 0, 0) == 0);
  std::vector<double> p = model.EstimatedTransition(0, 0, 0, 0);
  CHECK(p == std::vector<double>{0.5, 0.5});
  CHECK(model.EstimatedReward(0, 0, 0, 0) == 0.0);

  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 8);
  Rng rng(1);
  Simulator sim(mg);
  for (int k = 0; k < 20000; ++k) {
    int s = sim.Reset();
    for (int h = 0; h < 2; ++h) {
      int a = rng.UniformInt(2), b = rng.UniformInt(2);
      TransitionSample sample = sim.Step(a, b, rng);
      model.AddSample(sample);
      s = sample.s_next;
    }
    (void)s;
  }
  // Estimated dynamics approach the truth for the visited start state.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::vector<double> est = model.EstimatedTransition(0, 0, a, b);
      double tv = 0.0;
      for (int s = 0; s < 2; ++s) {
        tv += std::abs(est[s] - mg.TransitionAt(0, 0, a, b, s));
      }
      CHECK(tv / 2 < 0.02);
      CHECK(std::abs(model.EstimatedReward(0, 0, a, b) -
                     mg.RewardAt(0, 0, a, b)) < 1e-9);
    }
  }
}

TEST_CASE("Nash VI converges on a small game") {
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 12);
  LearnerOptions opts;
  opts.episodes = 20000;
  Rng rng(0);
  LearnerState state = NashViTrain(mg, opts, rng);
  CHECK(state.episodes_seen == 20000);
  auto [mu, nu] = ExtractPolicy(state);
  CHECK(Exploitability(mg, mu, nu) < 0.1);

  // The learned Q approaches the exact Q on every visited cell (cells
  // unreachable from the initial state keep the neutral model default).
  NashSolutionMG sol = ExactNashSolve(mg);
  double max_err = 0.0;
  for (int h = 0; h < mg.horizon; ++h) {
    for (int s = 0; s < mg.num_states; ++s) {
      for (int a = 0; a < mg.num_actions_max; ++a) {
        for (int b = 0; b < mg.num_actions_min; ++b) {
          if (state.model.VisitCount(h, s, a, b) == 0) continue;
          max_err = std::max(max_err, std::abs(state.q.At(h, s, a, b) -
                                               sol.q_star.At(h, s, a, b)));
        }
      }
    }
  }
  CHECK(max_err < 0.15);
}

TEST_CASE("Nash VI exploiter variant also converges") {
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 12);
  LearnerOptions opts;
  opts.episodes = 20000;
  Rng rng(0);
  LearnerState state = NashViExploiterTrain(mg, opts, rng);
  REQUIRE(state.q_tilde.has_value());
  auto [mu, nu] = ExtractPolicy(state);
  CHECK(Exploitability(mg, mu, nu) < 0.1);
}

TEST_CASE("Nash Q-learning alpha edge cases") {
  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 13);
  Rng rng(5);

  LearnerOptions zero;
  zero.episodes = 500;
  zero.alpha = 0.0;
  LearnerState state = NashQLearningTrain(mg, zero, rng);
  for (double q : state.q.q) CHECK(q == 0.0);

  // alpha = 1 makes the terminal-step Q exactly the (deterministic) reward at
  // every visited cell.
  LearnerOptions one;
  one.episodes = 2000;
  one.alpha = 1.0;
  one.schedule = EpsilonSchedule::Constant(1.0);
  Rng rng2(6);
  state = NashQLearningTrain(mg, one, rng2);
  int h = mg.horizon - 1;
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double q = state.q.At(h, s, a, b);
        if (q != 0.0) {
          CHECK(q == doctest::Approx(mg.RewardAt(h, s, a, b)));
        }
      }
    }
  }
}

TEST_CASE("Nash Q-learning values stay bounded") {
  TabularMG mg = GenerateRandomMg(3, 2, 2, 4, 14);
  LearnerOptions opts;
  opts.episodes = 5000;
  Rng rng(7);
  LearnerState state = NashQLearningTrain(mg, opts, rng);
  for (double q : state.q.q) CHECK(std::abs(q) <= 4.0 + 1e-9);
  auto [mu, nu] = ExtractPolicy(state);
  mu.Validate();
  nu.Validate();
}

TEST_CASE("Training is bit-reproducible") {
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 15);
  LearnerOptions opts;
  opts.episodes = 3000;
  Rng r1(9), r2(9);
  LearnerState a = NashViTrain(mg, opts, r1);
  LearnerState b = NashViTrain(mg, opts, r2);
  CHECK(a.q.q == b.q.q);
  Rng r3(9), r4(9);
  CHECK(NashQLearningTrain(mg, opts, r3).q.q ==
        NashQLearningTrain(mg, opts, r4).q.q);
}

TEST_CASE("Evaluation hook cadence") {
  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 16);
  LearnerOptions opts;
  opts.episodes = 500;
  opts.eval_every = 250;
  std::vector<int64_t> seen;
  opts.hook = [&seen](int64_t episode, const MarkovPolicy&,
                      const MarkovPolicy&) { seen.push_back(episode); };
  Rng rng(1);
  NashViTrain(mg, opts, rng);
  CHECK(seen == std::vector<int64_t>{0, 250, 500});

  seen.clear();
  opts.episodes = 0;
  Rng rng2(1);
  NashViTrain(mg, opts, rng2);
  CHECK(seen == std::vector<int64_t>{0});
}

TEST_CASE("One sweep after exhaustive uniform data matches the exact Q") {
  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 17);
  LearnerOptions opts;
  opts.episodes = 50000;
  opts.schedule = EpsilonSchedule::Constant(1.0);  // pure uniform exploration
  Rng rng(3);
  LearnerState state = NashViTrain(mg, opts, rng);
  NashSolutionMG sol = ExactNashSolve(mg);
  for (int h = 0; h < mg.horizon; ++h) {
    for (int s = 0; s < mg.num_states; ++s) {
      for (int a = 0; a < mg.num_actions_max; ++a) {
        for (int b = 0; b < mg.num_actions_min; ++b) {
          if (state.model.VisitCount(h, s, a, b) == 0) continue;
          CHECK(std::abs(state.q.At(h, s, a, b) -
                         sol.q_star.At(h, s, a, b)) < 0.05);
        }
      }
    }
  }
}

}  // namespace
}  // namespace nashmg
