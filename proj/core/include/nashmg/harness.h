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
// Experiment runner: configuration, training with periodic exploitability
// measurement, CSV logs, SVG convergence plots and solver benchmarking.

#ifndef NASHMG_HARNESS_H_
#define NASHMG_HARNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "nashmg/baselines.h"
#include "nashmg/exact_oracle.h"
#include "nashmg/learners.h"
#include "nashmg/markov_game.h"

namespace nashmg {

enum class Algorithm { kNashVi, kNashViExploiter, kNashQ, kSp, kFsp, kDo };

std::string AlgorithmName(Algorithm algo);
Algorithm ParseAlgorithm(const std::string& name);

enum class EvalMode { kExact, kApproxExploiter };

struct ExperimentConfig {
  // Environment: a file, or generator parameters when env_file is empty.
  std::string env_file;
  int env_s = 3, env_a = 3, env_b = 3, env_h = 3;
  uint64_t env_seed = 0;

  std::vector<Algorithm> algorithms = {Algorithm::kNashVi};
  int64_t episodes = 50000;
  double gamma = 1.0;
  EpsilonSchedule schedule = EpsilonSchedule::Constant(0.5);
  double alpha = 0.1;
  int64_t update_interval = 0;  // 0: 100 * H
  int64_t eval_every = 250;
  EvalMode eval_mode = EvalMode::kExact;
  std::vector<uint64_t> seeds = {0};
  std::string output_dir = ".";

  // Baseline knobs.
  int64_t br_episodes = 1000;
  int64_t meta_eval_episodes = 20;

  // Exploitability measurement knobs.
  int64_t node_budget = kDefaultNodeBudget;
  int64_t exploiter_episodes = 30000;   // approx exploiter training budget
  int64_t approx_eval_episodes = 2000;  // Monte-Carlo value estimation
  int64_t smoothing_window = 100;       // trailing window for approx curves

  bool log_scale = false;
  // Off by default so repeated runs produce byte-identical logs; the
  // wall_time_ms column is written as 0 unless enabled.
  bool record_wall_time = false;

  void Validate() const;
};

// Flat `key = value` file, '#' comments. Unknown keys are rejected.
ExperimentConfig ParseConfigFile(const std::string& path);
void ApplyConfigKeyValue(ExperimentConfig* config, const std::string& key,
                         const std::string& value);

struct RunLogRow {
  std::string algorithm;
  uint64_t seed = 0;
  int64_t episode = 0;
  double exploitability = 0.0;
  int64_t wall_time_ms = 0;
};

// Header `algorithm,seed,episode,exploitability,wall_time_ms`; exploitability
// printed with round-trip precision.
void WriteRunLogCsv(const std::string& path,
                    const std::vector<RunLogRow>& rows);

TabularMG LoadOrGenerateEnv(const ExperimentConfig& config);

// Approximate-exploiter protocol: a fresh Q-learning exploiter per side, then
// Monte-Carlo value estimation of each (exploiter, opponent) matchup.
double ApproxExploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                            const SidePolicy& nu_hat,
                            const ExperimentConfig& config, Rng& rng);

// Exact mode falls back to the approximate exploiter when the mixture best
// response exceeds the node budget.
double MeasureExploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                             const SidePolicy& nu_hat,
                             const ExperimentConfig& config, EvalMode mode,
                             Rng& rng);

// Trains one (algorithm, seed) run with periodic evaluation; fills the final
// deliverable pair.
std::vector<RunLogRow> RunTraining(const TabularMG& mg, Algorithm algo,
                                   const ExperimentConfig& config,
                                   uint64_t seed, SidePolicy* max_out,
                                   SidePolicy* min_out);

// CLI entry points (paths are resolved against output_dir). Each returns the
// process exit code.
int CmdGenerateEnv(int s, int a, int b, int h, uint64_t seed,
                   const std::string& out_path);
int CmdSolveExact(const std::string& env_path, const std::string& policy_out);
int CmdTrain(const ExperimentConfig& config);
int CmdCompare(const ExperimentConfig& config);
int CmdExploitEval(const std::string& policy_path, const std::string& env_path,
                   EvalMode mode, const ExperimentConfig& config);
int CmdBenchSolvers(int m, int n, int samples, uint64_t seed);

// Worker cap for cmd_compare: NASHMG_THREADS, else hardware concurrency.
int WorkerThreadCount();

}  // namespace nashmg

#endif  // NASHMG_HARNESS_H_
