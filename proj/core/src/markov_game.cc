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
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nashmg {
namespace {

using nlohmann::json;

constexpr double kRowSumTol = 1e-6;

void CheckStochasticRow(std::span<const double> row, const std::string& what) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) {
      throw InvariantViolationError(what + " has a negative entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTol) {
    throw InvariantViolationError(what + " sums to " + std::to_string(sum));
  }
}

json PolicyToJson(const MarkovPolicy& p) {
  json probs = json::array();
  for (int h = 0; h < p.horizon; ++h) {
    json per_state = json::array();
    for (int s = 0; s < p.num_states; ++s) {
      json row = json::array();
      for (int a = 0; a < p.num_actions; ++a) row.push_back(p.At(h, s, a));
      per_state.push_back(std::move(row));
    }
    probs.push_back(std::move(per_state));
  }
  return json{{"type", "markov"}, {"probs", std::move(probs)}};
}

MarkovPolicy PolicyFromJson(const json& j) {
  const json& probs = j.at("probs");
  MarkovPolicy p;
  p.horizon = static_cast<int>(probs.size());
  if (p.horizon == 0) throw MalformedInputError("empty policy table");
  p.num_states = static_cast<int>(probs[0].size());
  if (p.num_states == 0) throw MalformedInputError("policy with no states");
  p.num_actions = static_cast<int>(probs[0][0].size());
  p.probs.reserve(static_cast<size_t>(p.horizon) * p.num_states *
                  p.num_actions);
  for (const auto& per_state : probs) {
    if (static_cast<int>(per_state.size()) != p.num_states) {
      throw MalformedInputError("ragged policy table");
    }
    for (const auto& row : per_state) {
      if (static_cast<int>(row.size()) != p.num_actions) {
        throw MalformedInputError("ragged policy table");
      }
      for (const auto& v : row) p.probs.push_back(v.get<double>());
    }
  }
  p.Validate();
  return p;
}

json SideToJson(const SidePolicy& side) {
  if (const auto* mp = std::get_if<MarkovPolicy>(&side)) {
    return PolicyToJson(*mp);
  }
  const auto& mix = std::get<MixturePolicy>(side);
  json comps = json::array();
  for (const auto& c : mix.components) comps.push_back(PolicyToJson(c));
  return json{{"type", "mixture"},
              {"components", std::move(comps)},
              {"meta", mix.meta.probs}};
}

SidePolicy SideFromJson(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "markov") return PolicyFromJson(j);
  if (type == "mixture") {
    MixturePolicy mix;
    for (const auto& c : j.at("components")) {
      mix.components.push_back(PolicyFromJson(c));
    }
    mix.meta.probs = j.at("meta").get<std::vector<double>>();
    mix.Validate();
    return mix;
  }
  throw MalformedInputError("unknown policy type: " + type);
}

}  // namespace

void TabularMG::Validate() const {
  if (horizon < 1 || num_states < 1 || num_actions_max < 1 ||
      num_actions_min < 1) {
    throw InvariantViolationError("game sizes must be positive");
  }
  if (initial_state < 0 || initial_state >= num_states) {
    throw InvariantViolationError("initial_state out of range");
  }
  size_t want_t = static_cast<size_t>(horizon - 1) * num_states *
                  num_actions_max * num_actions_min * num_states;
  size_t want_r = static_cast<size_t>(horizon) * num_states * num_actions_max *
                  num_actions_min;
  if (transition.size() != want_t || reward.size() != want_r) {
    throw InvariantViolationError("tensor shapes do not match sizes");
  }
  for (double v : reward) {
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
      throw InvariantViolationError("reward entry outside [-1, 1]");
    }
  }
  for (int h = 0; h < horizon - 1; ++h) {
    for (int s = 0; s < num_states; ++s) {
      for (int a = 0; a < num_actions_max; ++a) {
        for (int b = 0; b < num_actions_min; ++b) {
          CheckStochasticRow(TransitionRow(h, s, a, b), "transition row");
        }
      }
    }
  }
}

MarkovPolicy MarkovPolicy::Uniform(int horizon, int num_states,
                                   int num_actions) {
  MarkovPolicy p;
  p.horizon = horizon;
  p.num_states = num_states;
  p.num_actions = num_actions;
  p.probs.assign(static_cast<size_t>(horizon) * num_states * num_actions,
                 1.0 / num_actions);
  return p;
}

void MarkovPolicy::Validate() const {
  if (horizon < 1 || num_states < 1 || num_actions < 1) {
    throw InvariantViolationError("policy sizes must be positive");
  }
  if (probs.size() !=
      static_cast<size_t>(horizon) * num_states * num_actions) {
    throw InvariantViolationError("policy table shape mismatch");
  }
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      CheckStochasticRow(Row(h, s), "policy row");
    }
  }
}

void MixturePolicy::Validate() const {
  if (components.empty()) {
    throw InvariantViolationError("mixture must have components");
  }
  if (meta.size() != static_cast<int>(components.size())) {
    throw InvariantViolationError("meta length does not match components");
  }
  if (!meta.IsValid()) {
    throw InvariantViolationError("meta weights are not a distribution");
  }
  for (const auto& c : components) c.Validate();
}

MixturePolicy AsMixture(const SidePolicy& side) {
  if (const auto* mp = std::get_if<MarkovPolicy>(&side)) {
    MixturePolicy mix;
    mix.components.push_back(*mp);
    mix.meta.probs = {1.0};
    return mix;
  }
  return std::get<MixturePolicy>(side);
}

SidePolicy SimplifySide(const SidePolicy& side) {
  const auto* mix = std::get_if<MixturePolicy>(&side);
  if (mix == nullptr) return side;
  int live = -1;
  for (int i = 0; i < mix->meta.size(); ++i) {
    if (mix->meta.probs[i] > 0.0) {
      if (live >= 0) return side;  // more than one live component
      live = i;
    }
  }
  if (live < 0) return side;
  return mix->components[live];
}

TabularMG GenerateRandomMg(int num_states, int num_actions_max,
                           int num_actions_min, int horizon, uint64_t seed) {
  if (num_states < 1 || num_actions_max < 1 || num_actions_min < 1 ||
      horizon < 1) {
    throw InvariantViolationError("game sizes must be positive");
  }
  TabularMG mg;
  mg.horizon = horizon;
  mg.num_states = num_states;
  mg.num_actions_max = num_actions_max;
  mg.num_actions_min = num_actions_min;
  mg.initial_state = 0;
  Rng rng(seed);
  Rng trans_rng = rng.Split(1);
  Rng reward_rng = rng.Split(2);

  size_t rows = static_cast<size_t>(horizon - 1) * num_states *
                num_actions_max * num_actions_min;
  mg.transition.reserve(rows * num_states);
  for (size_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    size_t base = mg.transition.size();
    for (int s2 = 0; s2 < num_states; ++s2) {
      double v = trans_rng.Uniform();
      mg.transition.push_back(v);
      sum += v;
    }
    if (sum <= 0.0) {
      for (int s2 = 0; s2 < num_states; ++s2) {
        mg.transition[base + s2] = 1.0 / num_states;
      }
    } else {
      for (int s2 = 0; s2 < num_states; ++s2) mg.transition[base + s2] /= sum;
    }
  }
  size_t cells = static_cast<size_t>(horizon) * num_states * num_actions_max *
                 num_actions_min;
  mg.reward.reserve(cells);
  for (size_t i = 0; i < cells; ++i) {
    mg.reward.push_back(reward_rng.UniformRange(-1.0, 1.0));
  }
  return mg;
}

RolloutResult Rollout(const TabularMG& mg, const MarkovPolicy& mu,
                      const MarkovPolicy& nu, double gamma, Rng& rng) {
  if (mu.horizon != mg.horizon || mu.num_states != mg.num_states ||
      mu.num_actions != mg.num_actions_max || nu.horizon != mg.horizon ||
      nu.num_states != mg.num_states ||
      nu.num_actions != mg.num_actions_min) {
    throw DimensionMismatchError("policy dimensions do not match game");
  }
  RolloutResult out;
  out.trajectory.reserve(mg.horizon);
  Simulator sim(mg);
  int s = sim.Reset();
  double discount = 1.0;
  for (int h = 0; h < mg.horizon; ++h) {
    int a = rng.SampleCategorical(mu.Row(h, s));
    int b = rng.SampleCategorical(nu.Row(h, s));
    TransitionSample sample = sim.Step(a, b, rng);
    out.ret += discount * sample.r;
    discount *= gamma;
    s = sample.s_next;
    out.trajectory.push_back(sample);
  }
  return out;
}

int Simulator::Reset() {
  h_ = 0;
  state_ = mg_.initial_state;
  return state_;
}

TransitionSample Simulator::Step(int a, int b, Rng& rng) {
  TransitionSample sample;
  sample.h = h_;
  sample.s = state_;
  sample.a = a;
  sample.b = b;
  sample.r = mg_.RewardAt(h_, state_, a, b);
  sample.done = (h_ == mg_.horizon - 1);
  if (!sample.done) {
    sample.s_next = rng.SampleCategorical(mg_.TransitionRow(h_, state_, a, b));
    state_ = sample.s_next;
    ++h_;
  } else {
    sample.s_next = state_;
  }
  return sample;
}

std::string SerializeMg(const TabularMG& mg) {
  mg.Validate();
  json j;
  j["S"] = mg.num_states;
  j["A"] = mg.num_actions_max;
  j["B"] = mg.num_actions_min;
  j["H"] = mg.horizon;
  j["initial_state"] = mg.initial_state;
  json trans = json::array();
  for (int h = 0; h < mg.horizon - 1; ++h) {
    json jh = json::array();
    for (int s = 0; s < mg.num_states; ++s) {
      json js = json::array();
      for (int a = 0; a < mg.num_actions_max; ++a) {
        json ja = json::array();
        for (int b = 0; b < mg.num_actions_min; ++b) {
          json row = json::array();
          for (int s2 = 0; s2 < mg.num_states; ++s2) {
            row.push_back(mg.TransitionAt(h, s, a, b, s2));
          }
          ja.push_back(std::move(row));
        }
        js.push_back(std::move(ja));
      }
      jh.push_back(std::move(js));
    }
    trans.push_back(std::move(jh));
  }
  j["transition"] = std::move(trans);
  json rew = json::array();
  for (int h = 0; h < mg.horizon; ++h) {
    json jh = json::array();
    for (int s = 0; s < mg.num_states; ++s) {
      json js = json::array();
      for (int a = 0; a < mg.num_actions_max; ++a) {
        json ja = json::array();
        for (int b = 0; b < mg.num_actions_min; ++b) {
          ja.push_back(mg.RewardAt(h, s, a, b));
        }
        js.push_back(std::move(ja));
      }
      jh.push_back(std::move(js));
    }
    rew.push_back(std::move(jh));
  }
  j["reward"] = std::move(rew);
  return j.dump(1) + "\n";
}

TabularMG DeserializeMg(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInputError(std::string("bad environment file: ") +
                              e.what());
  }
  TabularMG mg;
  try {
    mg.num_states = j.at("S").get<int>();
    mg.num_actions_max = j.at("A").get<int>();
    mg.num_actions_min = j.at("B").get<int>();
    mg.horizon = j.at("H").get<int>();
    mg.initial_state = j.at("initial_state").get<int>();
    for (const auto& jh : j.at("transition")) {
      for (const auto& js : jh) {
        for (const auto& ja : js) {
          for (const auto& jb : ja) {
            for (const auto& v : jb) mg.transition.push_back(v.get<double>());
          }
        }
      }
    }
    for (const auto& jh : j.at("reward")) {
      for (const auto& js : jh) {
        for (const auto& ja : js) {
          for (const auto& v : ja) mg.reward.push_back(v.get<double>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw MalformedInputError(std::string("bad environment file: ") +
                              e.what());
  }
  mg.Validate();
  return mg;
}

void WriteMgFile(const std::string& path, const TabularMG& mg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << SerializeMg(mg);
  if (!out) throw IoError("write failed: " + path);
}

TabularMG ReadMgFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return DeserializeMg(ss.str());
}

std::string SerializePolicyPair(const SidePolicy& max_side,
                                const SidePolicy& min_side) {
  json j;
  j["max"] = SideToJson(max_side);
  j["min"] = SideToJson(min_side);
  return j.dump(1) + "\n";
}

std::pair<SidePolicy, SidePolicy> DeserializePolicyPair(
    const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInputError(std::string("bad policy file: ") + e.what());
  }
  try {
    return {SideFromJson(j.at("max")), SideFromJson(j.at("min"))};
  } catch (const json::exception& e) {
    throw MalformedInputError(std::string("bad policy file: ") + e.what());
  }
}

void WritePolicyFile(const std::string& path, const SidePolicy& max_side,
                     const SidePolicy& min_side) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << SerializePolicyPair(max_side, min_side);
  if (!out) throw IoError("write failed: " + path);
}

std::pair<SidePolicy, SidePolicy> ReadPolicyFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return DeserializePolicyPair(ss.str());
}

}  // namespace nashmg
