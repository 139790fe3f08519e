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

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nashmg/harness.h"

namespace {

nashmg::ExperimentConfig LoadConfig(const std::string& config_path,
                                    const std::string& output_dir,
                                    const std::vector<std::string>& sets) {
  nashmg::ExperimentConfig config;
  if (!config_path.empty()) config = nashmg::ParseConfigFile(config_path);
  for (const std::string& kv : sets) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw nashmg::ConfigError("--set expects key=value, got: " + kv);
    }
    nashmg::ApplyConfigKeyValue(&config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!output_dir.empty()) config.output_dir = output_dir;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular zero-sum Markov game equilibrium learning toolkit"};
  app.require_subcommand(1);

  // generate-env
  int gs = 3, ga = 3, gb = 3, gh = 3;
  uint64_t gseed = 0;
  std::string gout = "env.json";
  CLI::App* gen = app.add_subcommand("generate-env",
                                     "Write a random environment file");
  gen->add_option("--states", gs, "Number of states");
  gen->add_option("--actions-max", ga, "Max-player actions");
  gen->add_option("--actions-min", gb, "Min-player actions");
  gen->add_option("--horizon", gh, "Horizon");
  gen->add_option("--seed", gseed, "Generator seed");
  gen->add_option("--out", gout, "Output path");

  // solve-exact
  std::string se_env, se_policy_out;
  CLI::App* solve = app.add_subcommand(
      "solve-exact", "Print the game value and write the Nash policy pair");
  solve->add_option("--env", se_env, "Environment file")->required();
  solve->add_option("--policy-out", se_policy_out, "Nash policy output path");

  // shared config options for train/compare
  std::string config_path, output_dir;
  std::vector<std::string> sets;
  auto add_config_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Flat key = value config file");
    cmd->add_option("--output-dir", output_dir, "Artifact directory");
    cmd->add_option("--set", sets, "Inline key=value config overrides");
  };
  CLI::App* train = app.add_subcommand(
      "train", "Train one or more algorithms; write run log and policies");
  add_config_opts(train);
  CLI::App* compare = app.add_subcommand(
      "compare", "Run an algorithm comparison; write merged CSV and SVG");
  add_config_opts(compare);

  // exploit-eval
  std::string ee_policy, ee_env, ee_mode = "exact";
  uint64_t ee_seed = 0;
  CLI::App* ee = app.add_subcommand("exploit-eval",
                                    "Print the exploitability of a policy pair");
  ee->add_option("--policy", ee_policy, "Policy pair file")->required();
  ee->add_option("--env", ee_env, "Environment file")->required();
  ee->add_option("--mode", ee_mode, "exact or approx_exploiter")
      ->check(CLI::IsMember({"exact", "approx_exploiter"}));
  ee->add_option("--seed", ee_seed, "Seed for the approximate exploiter");
  ee->add_option("--set", sets, "Inline key=value config overrides");

  // bench-solvers
  int bm = 6, bn = 6, bsamples = 1000;
  uint64_t bseed = 0;
  CLI::App* bench = app.add_subcommand(
      "bench-solvers", "Time the LP and MWU solvers on random matrices");
  bench->add_option("--rows", bm, "Matrix rows");
  bench->add_option("--cols", bn, "Matrix columns");
  bench->add_option("--samples", bsamples, "Number of matrices");
  bench->add_option("--seed", bseed, "Matrix generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      return nashmg::CmdGenerateEnv(gs, ga, gb, gh, gseed, gout);
    }
    if (solve->parsed()) {
      return nashmg::CmdSolveExact(se_env, se_policy_out);
    }
    if (train->parsed()) {
      return nashmg::CmdTrain(LoadConfig(config_path, output_dir, sets));
    }
    if (compare->parsed()) {
      return nashmg::CmdCompare(LoadConfig(config_path, output_dir, sets));
    }
    if (ee->parsed()) {
      nashmg::ExperimentConfig config = LoadConfig("", "", sets);
      config.seeds = {ee_seed};
      nashmg::EvalMode mode = ee_mode == "exact"
                                  ? nashmg::EvalMode::kExact
                                  : nashmg::EvalMode::kApproxExploiter;
      return nashmg::CmdExploitEval(ee_policy, ee_env, mode, config);
    }
    if (bench->parsed()) {
      return nashmg::CmdBenchSolvers(bm, bn, bsamples, bseed);
    }
  } catch (const nashmg::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
