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

#include "nashmg/markov_game.h"

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "nashmg/rng.h"

namespace nashmg {
namespace {

TEST_CASE("Rng streams are deterministic and split-independent") {
  Rng a(7), b(7);
  for (int i = 0; i < 32; ++i) CHECK(a.Uniform() == b.Uniform());

  // Split depends only on the seed and stream id, not on draws consumed.
  Rng c(7);
  Rng split_before = c.Split(3);
  c.Uniform();
  c.Uniform();
  Rng split_after = c.Split(3);
  for (int i = 0; i < 8; ++i) {
    CHECK(split_before.Uniform() == split_after.Uniform());
  }

  Rng d(7);
  CHECK(d.Split(1).Uniform() != d.Split(2).Uniform());
}

TEST_CASE("Rng conversions stay in range") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    int k = rng.UniformInt(7);
    CHECK(k >= 0);
    CHECK(k < 7);
  }
}

TEST_CASE("SampleCategorical matches probabilities") {
  Rng rng(11);
  std::vector<double> p = {0.2, 0.5, 0.3};
  std::vector<int> counts(3, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[rng.SampleCategorical(p)];
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(static_cast<double>(counts[i]) / n - p[i]) < 0.01);
  }
}

TEST_CASE("GenerateRandomMg is valid and seed-determined") {
  TabularMG a = GenerateRandomMg(3, 3, 3, 3, 42);
  a.Validate();
  TabularMG b = GenerateRandomMg(3, 3, 3, 3, 42);
  CHECK(a.transition == b.transition);
  CHECK(a.reward == b.reward);
  TabularMG c = GenerateRandomMg(3, 3, 3, 3, 43);
  CHECK(a.transition != c.transition);

  for (int h = 0; h < a.horizon - 1; ++h) {
    for (int s = 0; s < a.num_states; ++s) {
      for (int x = 0; x < a.num_actions_max; ++x) {
        for (int y = 0; y < a.num_actions_min; ++y) {
          auto row = a.TransitionRow(h, s, x, y);
          double sum = std::accumulate(row.begin(), row.end(), 0.0);
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
      }
    }
  }
  for (double r : a.reward) {
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("Validate rejects malformed games") {
  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 0);
  mg.transition[0] += 0.5;
  CHECK_THROWS_AS(mg.Validate(), InvariantViolationError);

  TabularMG mg2 = GenerateRandomMg(2, 2, 2, 2, 0);
  mg2.reward[0] = 1.5;
  CHECK_THROWS_AS(mg2.Validate(), InvariantViolationError);
}

TEST_CASE("Rollout returns bounded and reproducible") {
  TabularMG mg = GenerateRandomMg(3, 2, 2, 4, 5);
  MarkovPolicy mu = MarkovPolicy::Uniform(4, 3, 2);
  MarkovPolicy nu = MarkovPolicy::Uniform(4, 3, 2);
  double bound = 4.0;  // H * max|r| at gamma = 1
  Rng r1(123), r2(123);
  for (int k = 0; k < 200; ++k) {
    RolloutResult a = Rollout(mg, mu, nu, 1.0, r1);
    RolloutResult b = Rollout(mg, mu, nu, 1.0, r2);
    CHECK(a.ret == b.ret);
    CHECK(std::abs(a.ret) <= bound);
    CHECK(a.trajectory.size() == 4);
    CHECK(a.trajectory.back().done);
  }
}

TEST_CASE("Simulator steps through the horizon") {
  TabularMG mg = GenerateRandomMg(3, 2, 2, 3, 1);
  Simulator sim(mg);
  Rng rng(0);
  int s = sim.Reset();
  CHECK(s == mg.initial_state);
  for (int h = 0; h < 3; ++h) {
    TransitionSample sample = sim.Step(0, 1, rng);
    CHECK(sample.h == h);
    CHECK(sample.done == (h == 2));
  }
}

TEST_CASE("Empirical transition frequency matches P") {
  TabularMG mg = GenerateRandomMg(4, 2, 2, 2, 77);
  Rng rng(3);
  const int n = 100000;
  std::vector<int> counts(4, 0);
  for (int k = 0; k < n; ++k) {
    ++counts[rng.SampleCategorical(mg.TransitionRow(0, 0, 1, 0))];
  }
  double tv = 0.0;
  for (int s = 0; s < 4; ++s) {
    tv += std::abs(static_cast<double>(counts[s]) / n -
                   mg.TransitionAt(0, 0, 1, 0, s));
  }
  CHECK(tv / 2.0 < 0.02);
}

TEST_CASE("Environment serialization round trips exactly") {
  TabularMG mg = GenerateRandomMg(3, 3, 2, 3, 9);
  std::string text = SerializeMg(mg);
  TabularMG back = DeserializeMg(text);
  CHECK(back.horizon == mg.horizon);
  CHECK(back.num_states == mg.num_states);
  CHECK(back.num_actions_max == mg.num_actions_max);
  CHECK(back.num_actions_min == mg.num_actions_min);
  CHECK(back.initial_state == mg.initial_state);
  CHECK(back.transition == mg.transition);
  CHECK(back.reward == mg.reward);
  // Serialization is canonical.
  CHECK(SerializeMg(back) == text);
}

TEST_CASE("DeserializeMg rejects malformed input") {
  CHECK_THROWS_AS(DeserializeMg("not json"), MalformedInputError);
  CHECK_THROWS_AS(DeserializeMg("{\"S\": 2}"), MalformedInputError);
}

TEST_CASE("Policy pair serialization round trips") {
  MarkovPolicy mu = MarkovPolicy::Uniform(2, 2, 3);
  mu.SetRow(1, 0, std::vector<double>{0.25, 0.25, 0.5});
  MixturePolicy mix;
  mix.components = {MarkovPolicy::Uniform(2, 2, 2),
                    MarkovPolicy::Uniform(2, 2, 2)};
  mix.components[1].SetRow(0, 1, std::vector<double>{0.9, 0.1});
  mix.meta = MixedStrategy{{0.3, 0.7}};

  std::string text = SerializePolicyPair(mu, mix);
  auto [max_side, min_side] = DeserializePolicyPair(text);
  const auto& mu2 = std::get<MarkovPolicy>(max_side);
  CHECK(mu2.probs == mu.probs);
  const auto& mix2 = std::get<MixturePolicy>(min_side);
  CHECK(mix2.meta.probs == mix.meta.probs);
  REQUIRE(mix2.components.size() == 2);
  CHECK(mix2.components[1].probs == mix.components[1].probs);
}

TEST_CASE("SimplifySide collapses one-hot mixtures") {
  MixturePolicy mix;
  mix.components = {MarkovPolicy::Uniform(2, 2, 2),
                    MarkovPolicy::Uniform(2, 2, 2)};
  mix.components[1].SetRow(0, 0, std::vector<double>{1.0, 0.0});
  mix.meta = MixedStrategy{{0.0, 1.0}};
  SidePolicy simplified = SimplifySide(mix);
  REQUIRE(std::holds_alternative<MarkovPolicy>(simplified));
  CHECK(std::get<MarkovPolicy>(simplified).probs == mix.components[1].probs);

  mix.meta = MixedStrategy{{0.5, 0.5}};
  CHECK(std::holds_alternative<MixturePolicy>(SimplifySide(mix)));
}

TEST_CASE("AsMixture wraps a Markov policy as a singleton") {
  MarkovPolicy mu = MarkovPolicy::Uniform(2, 3, 2);
  MixturePolicy mix = AsMixture(mu);
  REQUIRE(mix.components.size() == 1);
  CHECK(mix.meta.probs == std::vector<double>{1.0});
  CHECK(mix.components[0].probs == mu.probs);
}

}  // namespace
}  // namespace nashmg
