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

#include "nashmg/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "nashmg/svg_chart.h"

namespace nashmg {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string TrimCopy(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = TrimCopy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int64_t ParseInt(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    int64_t r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

double ParseReal(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("bad real for " + key + ": " + v);
  }
}

bool ParseBool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

double MedianOf(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Monte-Carlo mean return of a Markov responder against an opponent mixture
// (one component sampled per episode). `responder_is_max` selects seats.
double McMatchupValue(const TabularMG& mg, const MarkovPolicy& responder,
                      const MixturePolicy& opponent, bool responder_is_max,
                      double gamma, int64_t episodes, Rng& rng) {
  double sum = 0.0;
  for (int64_t k = 0; k < episodes; ++k) {
    const MarkovPolicy& opp =
        opponent.components[rng.SampleCategorical(opponent.meta.probs)];
    const MarkovPolicy& mu = responder_is_max ? responder : opp;
    const MarkovPolicy& nu = responder_is_max ? opp : responder;
    sum += Rollout(mg, mu, nu, gamma, rng).ret;
  }
  return sum / episodes;
}

struct RunContext {
  const ExperimentConfig* config;
  Rng eval_rng_base;
  Clock::time_point start;
  std::vector<RunLogRow>* rows;
  std::string algo_name;
  uint64_t seed;
  const TabularMG* mg;

  void Log(int64_t episode, const SidePolicy& max_side,
           const SidePolicy& min_side) {
    Rng eval_rng = eval_rng_base.Split(static_cast<uint64_t>(episode));
    double expl = MeasureExploitability(*mg, max_side, min_side, *config,
                                        config->eval_mode, eval_rng);
    int64_t ms = 0;
    if (config->record_wall_time) {
      ms = std::chrono::duration_cast<std::chrono::milliseconds>(
               Clock::now() - start)
               .count();
    }
    rows->push_back({algo_name, seed, episode, expl, ms});
  }
};

}  // namespace

std::string AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kNashVi:
      return "nash_vi";
    case Algorithm::kNashViExploiter:
      return "nash_vi_exploiter";
    case Algorithm::kNashQ:
      return "nash_q";
    case Algorithm::kSp:
      return "sp";
    case Algorithm::kFsp:
      return "fsp";
    case Algorithm::kDo:
      return "do";
  }
  throw ConfigError("unknown algorithm enum");
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "nash_vi") return Algorithm::kNashVi;
  if (name == "nash_vi_exploiter") return Algorithm::kNashViExploiter;
  if (name == "nash_q") return Algorithm::kNashQ;
  if (name == "sp") return Algorithm::kSp;
  if (name == "fsp") return Algorithm::kFsp;
  if (name == "do") return Algorithm::kDo;
  throw ConfigError("unknown algorithm: " + name);
}

void ExperimentConfig::Validate() const {
  if (env_file.empty() &&
      (env_s < 1 || env_a < 1 || env_b < 1 || env_h < 1)) {
    throw ConfigError("generator sizes must be positive");
  }
  if (algorithms.empty()) throw ConfigError("no algorithm selected");
  if (episodes < 0) throw ConfigError("episodes must be >= 0");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (episodes % eval_every != 0) {
    throw ConfigError("eval_every must divide the episode budget");
  }
  if (seeds.empty()) throw ConfigError("need at least one seed");
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0,1]");
  if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma must be in [0,1]");
  if (br_episodes < 1 || meta_eval_episodes < 1 || exploiter_episodes < 1 ||
      approx_eval_episodes < 1) {
    throw ConfigError("episode counts must be positive");
  }
}

void ApplyConfigKeyValue(ExperimentConfig* c, const std::string& key,
                         const std::string& value) {
  if (key == "env_file") {
    c->env_file = value;
  } else if (key == "S") {
    c->env_s = static_cast<int>(ParseInt(value, key));
  } else if (key == "A") {
    c->env_a = static_cast<int>(ParseInt(value, key));
  } else if (key == "B") {
    c->env_b = static_cast<int>(ParseInt(value, key));
  } else if (key == "H") {
    c->env_h = static_cast<int>(ParseInt(value, key));
  } else if (key == "env_seed") {
    c->env_seed = static_cast<uint64_t>(ParseInt(value, key));
  } else if (key == "algorithm") {
    c->algorithms.clear();
    for (const auto& name : SplitCommas(value)) {
      c->algorithms.push_back(ParseAlgorithm(name));
    }
  } else if (key == "episodes") {
    c->episodes = ParseInt(value, key);
  } else if (key == "gamma") {
    c->gamma = ParseReal(value, key);
  } else if (key == "eps0") {
    c->schedule.eps0 = ParseReal(value, key);
  } else if (key == "eps1") {
    c->schedule.eps1 = ParseReal(value, key);
  } else if (key == "eps_decay_scale") {
    c->schedule.p = ParseReal(value, key);
  } else if (key == "eps_mode") {
    if (value == "constant") {
      c->schedule.mode = EpsilonSchedule::Mode::kConstant;
    } else if (value == "exponential") {
      c->schedule.mode = EpsilonSchedule::Mode::kExponential;
    } else {
      throw ConfigError("eps_mode must be constant or exponential");
    }
  } else if (key == "alpha") {
    c->alpha = ParseReal(value, key);
  } else if (key == "update_interval") {
    c->update_interval = ParseInt(value, key);
  } else if (key == "eval_every") {
    c->eval_every = ParseInt(value, key);
  } else if (key == "eval_mode") {
    if (value == "exact") {
      c->eval_mode = EvalMode::kExact;
    } else if (value == "approx_exploiter") {
      c->eval_mode = EvalMode::kApproxExploiter;
    } else {
      throw ConfigError("eval_mode must be exact or approx_exploiter");
    }
  } else if (key == "seeds") {
    c->seeds.clear();
    for (const auto& s : SplitCommas(value)) {
      c->seeds.push_back(static_cast<uint64_t>(ParseInt(s, key)));
    }
  } else if (key == "output_dir") {
    c->output_dir = value;
  } else if (key == "br_episodes") {
    c->br_episodes = ParseInt(value, key);
  } else if (key == "meta_eval_episodes") {
    c->meta_eval_episodes = ParseInt(value, key);
  } else if (key == "node_budget") {
    c->node_budget = ParseInt(value, key);
  } else if (key == "exploiter_episodes") {
    c->exploiter_episodes = ParseInt(value, key);
  } else if (key == "approx_eval_episodes") {
    c->approx_eval_episodes = ParseInt(value, key);
  } else if (key == "smoothing_window") {
    c->smoothing_window = ParseInt(value, key);
  } else if (key == "log_scale") {
    c->log_scale = ParseBool(value, key);
  } else if (key == "timing") {
    if (value == "none") {
      c->record_wall_time = false;
    } else if (value == "wall") {
      c->record_wall_time = true;
    } else {
      throw ConfigError("timing must be none or wall");
    }
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ExperimentConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = TrimCopy(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    ApplyConfigKeyValue(&config, TrimCopy(line.substr(0, eq)),
                        TrimCopy(line.substr(eq + 1)));
  }
  return config;
}

void WriteRunLogCsv(const std::string& path,
                    const std::vector<RunLogRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "algorithm,seed,episode,exploitability,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.algorithm << "," << r.seed << "," << r.episode << ","
        << FormatDouble(r.exploitability) << "," << r.wall_time_ms << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

TabularMG LoadOrGenerateEnv(const ExperimentConfig& config) {
  if (!config.env_file.empty()) return ReadMgFile(config.env_file);
  return GenerateRandomMg(config.env_s, config.env_a, config.env_b,
                          config.env_h, config.env_seed);
}

double ApproxExploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                            const SidePolicy& nu_hat,
                            const ExperimentConfig& config, Rng& rng) {
  MixturePolicy max_mix = AsMixture(mu_hat);
  MixturePolicy min_mix = AsMixture(nu_hat);

  BrConfig br;
  br.episodes = config.exploiter_episodes;
  br.alpha = config.alpha > 0.0 ? config.alpha : 0.1;
  br.schedule = EpsilonSchedule::Exponential(1.0, 0.0, 8000.0);
  br.gamma = config.gamma;

  // Max-player exploiter against the min side.
  PolicySet min_as_opp{min_mix.components, PlayerRole::kMinPlayer};
  MetaStrategy min_meta{min_mix.meta};
  Rng rng_a = rng.Split(1);
  MarkovPolicy max_exploiter =
      QLearningBestResponse(mg, min_as_opp, min_meta, br, rng_a);
  double v_dagger_nu =
      McMatchupValue(mg, max_exploiter, min_mix, /*responder_is_max=*/true,
                     config.gamma, config.approx_eval_episodes, rng_a);

  // Min-player exploiter against the max side.
  PolicySet max_as_opp{max_mix.components, PlayerRole::kMaxPlayer};
  MetaStrategy max_meta{max_mix.meta};
  Rng rng_b = rng.Split(2);
  MarkovPolicy min_exploiter =
      QLearningBestResponse(mg, max_as_opp, max_meta, br, rng_b);
  double v_mu_dagger =
      McMatchupValue(mg, min_exploiter, max_mix, /*responder_is_max=*/false,
                     config.gamma, config.approx_eval_episodes, rng_b);

  return v_dagger_nu - v_mu_dagger;
}

double MeasureExploitability(const TabularMG& mg, const SidePolicy& mu_hat,
                             const SidePolicy& nu_hat,
                             const ExperimentConfig& config, EvalMode mode,
                             Rng& rng) {
  if (mode == EvalMode::kExact) {
    try {
      return Exploitability(mg, mu_hat, nu_hat, config.gamma,
                            config.node_budget);
    } catch (const HistoryBudgetExceededError&) {
      // Fall through to the learned exploiter.
    }
  }
  return ApproxExploitability(mg, mu_hat, nu_hat, config, rng);
}

std::vector<RunLogRow> RunTraining(const TabularMG& mg, Algorithm algo,
                                   const ExperimentConfig& config,
                                   uint64_t seed, SidePolicy* max_out,
                                   SidePolicy* min_out) {
  config.Validate();
  std::vector<RunLogRow> rows;
  Rng root(seed);
  Rng train_rng = root.Split(1);
  RunContext ctx{&config, root.Split(2), Clock::now(),
                 &rows,   AlgorithmName(algo), seed, &mg};

  switch (algo) {
    case Algorithm::kNashVi:
    case Algorithm::kNashViExploiter:
    case Algorithm::kNashQ: {
      LearnerOptions opts;
      opts.episodes = config.episodes;
      opts.schedule = config.schedule;
      opts.update_interval = config.update_interval;
      opts.alpha = config.alpha;
      opts.gamma = config.gamma;
      opts.eval_every = config.eval_every;
      opts.hook = [&ctx](int64_t episode, const MarkovPolicy& mu,
                         const MarkovPolicy& nu) {
        ctx.Log(episode, mu, nu);
      };
      LearnerState state;
      if (algo == Algorithm::kNashVi) {
        state = NashViTrain(mg, opts, train_rng);
      } else if (algo == Algorithm::kNashViExploiter) {
        state = NashViExploiterTrain(mg, opts, train_rng);
      } else {
        state = NashQLearningTrain(mg, opts, train_rng);
      }
      auto [mu, nu] = ExtractPolicy(state);
      if (max_out != nullptr) *max_out = mu;
      if (min_out != nullptr) *min_out = nu;
      break;
    }
    case Algorithm::kSp:
    case Algorithm::kFsp:
    case Algorithm::kDo: {
      BaselineOptions opts;
      opts.episode_budget = config.episodes;
      opts.br.episodes = config.br_episodes;
      opts.br.alpha = config.alpha;
      opts.br.schedule = config.schedule;
      opts.meta_eval_episodes = config.meta_eval_episodes;
      opts.gamma = config.gamma;
      int64_t next_eval = 0;
      opts.hook = [&ctx, &next_eval, &config](int64_t episodes_used,
                                              const BaselineResult& current) {
        if (episodes_used < next_eval &&
            episodes_used < config.episodes) {
          return;
        }
        ctx.Log(episodes_used, current.MaxDeliverable(),
                current.MinDeliverable());
        next_eval =
            (episodes_used / config.eval_every + 1) * config.eval_every;
      };
      BaselineResult res;
      if (algo == Algorithm::kSp) {
        res = SelfPlayTrain(mg, opts, train_rng);
      } else if (algo == Algorithm::kFsp) {
        res = FspTrain(mg, opts, train_rng);
      } else {
        res = DoTrain(mg, opts, train_rng);
      }
      if (max_out != nullptr) *max_out = res.MaxDeliverable();
      if (min_out != nullptr) *min_out = res.MinDeliverable();
      break;
    }
  }
  return rows;
}

int CmdGenerateEnv(int s, int a, int b, int h, uint64_t seed,
                   const std::string& out_path) {
  TabularMG mg = GenerateRandomMg(s, a, b, h, seed);
  WriteMgFile(out_path, mg);
  std::printf("wrote %s (S=%d A=%d B=%d H=%d seed=%llu)\n", out_path.c_str(),
              s, a, b, h, static_cast<unsigned long long>(seed));
  return 0;
}

int CmdSolveExact(const std::string& env_path,
                  const std::string& policy_out) {
  TabularMG mg = ReadMgFile(env_path);
  NashSolutionMG sol = ExactNashSolve(mg);
  std::printf("%.6f\n", sol.v_star.At(0, mg.initial_state));
  if (!policy_out.empty()) {
    WritePolicyFile(policy_out, sol.mu_star, sol.nu_star);
  }
  return 0;
}

int CmdTrain(const ExperimentConfig& config) {
  config.Validate();
  fs::create_directories(config.output_dir);
  TabularMG mg = LoadOrGenerateEnv(config);
  std::vector<RunLogRow> all_rows;
  for (Algorithm algo : config.algorithms) {
    for (uint64_t seed : config.seeds) {
      SidePolicy max_side, min_side;
      std::vector<RunLogRow> rows =
          RunTraining(mg, algo, config, seed, &max_side, &min_side);
      all_rows.insert(all_rows.end(), rows.begin(), rows.end());
      std::string policy_path =
          JoinPath(config.output_dir, "policy_" + AlgorithmName(algo) +
                                          "_seed" + std::to_string(seed) +
                                          ".json");
      WritePolicyFile(policy_path, max_side, min_side);
      if (!rows.empty()) {
        std::printf("%s seed=%llu final exploitability %.6f\n",
                    AlgorithmName(algo).c_str(),
                    static_cast<unsigned long long>(seed),
                    rows.back().exploitability);
      }
    }
  }
  WriteRunLogCsv(JoinPath(config.output_dir, "runlog.csv"), all_rows);
  return 0;
}

int WorkerThreadCount() {
  if (const char* env = std::getenv("NASHMG_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int CmdCompare(const ExperimentConfig& config) {
  config.Validate();
  fs::create_directories(config.output_dir);
  TabularMG mg = LoadOrGenerateEnv(config);

  struct Task {
    Algorithm algo;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (Algorithm algo : config.algorithms) {
    for (uint64_t seed : config.seeds) tasks.push_back({algo, seed});
  }
  std::vector<std::vector<RunLogRow>> results(tasks.size());
  std::atomic<size_t> next{0};
  int workers = std::min<int>(WorkerThreadCount(),
                              static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  std::mutex error_mu;
  std::string first_error;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1)) {
        try {
          results[i] = RunTraining(mg, tasks[i].algo, config, tasks[i].seed,
                                   nullptr, nullptr);
        } catch (const std::exception& e) {
          std::scoped_lock lock(error_mu);
          if (first_error.empty()) first_error = e.what();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw Error(first_error);

  // Deterministic merge order: (algorithm, seed, episode).
  std::vector<RunLogRow> all_rows;
  for (const auto& rows : results) {
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }
  std::stable_sort(all_rows.begin(), all_rows.end(),
                   [](const RunLogRow& a, const RunLogRow& b) {
                     return std::tie(a.algorithm, a.seed, a.episode) <
                            std::tie(b.algorithm, b.seed, b.episode);
                   });
  WriteRunLogCsv(JoinPath(config.output_dir, "compare.csv"), all_rows);

  // One median curve per algorithm with a min-max band across seeds.
  std::vector<ChartSeries> series;
  for (Algorithm algo : config.algorithms) {
    std::string name = AlgorithmName(algo);
    std::map<int64_t, std::vector<double>> by_episode;
    for (const auto& r : all_rows) {
      if (r.algorithm == name) by_episode[r.episode].push_back(r.exploitability);
    }
    ChartSeries s;
    s.label = name;
    for (const auto& [episode, values] : by_episode) {
      s.x.push_back(static_cast<double>(episode));
      s.y.push_back(MedianOf(values));
      s.y_min.push_back(*std::min_element(values.begin(), values.end()));
      s.y_max.push_back(*std::max_element(values.begin(), values.end()));
    }
    series.push_back(std::move(s));
  }
  ChartOptions chart;
  chart.title = "exploitability vs episodes";
  chart.log_y = config.log_scale;
  WriteLineChartSvg(JoinPath(config.output_dir, "compare.svg"), series,
                    chart);
  std::printf("wrote %s and %s\n",
              JoinPath(config.output_dir, "compare.csv").c_str(),
              JoinPath(config.output_dir, "compare.svg").c_str());
  return 0;
}

int CmdExploitEval(const std::string& policy_path,
                   const std::string& env_path, EvalMode mode,
                   const ExperimentConfig& config) {
  TabularMG mg = ReadMgFile(env_path);
  auto [max_side, min_side] = ReadPolicyFile(policy_path);
  Rng rng(config.seeds.empty() ? 0 : config.seeds.front());
  double expl;
  if (mode == EvalMode::kExact) {
    expl = Exploitability(mg, max_side, min_side, config.gamma,
                          config.node_budget);
  } else {
    expl = ApproxExploitability(mg, max_side, min_side, config, rng);
  }
  std::printf("%.6f\n", expl);
  return 0;
}

int CmdBenchSolvers(int m, int n, int samples, uint64_t seed) {
  if (m < 1 || n < 1 || samples < 1) {
    throw ConfigError("bench-solvers sizes must be positive");
  }
  Rng rng(seed);
  std::vector<PayoffMatrix> mats;
  mats.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    PayoffMatrix a(m, n);
    for (double& v : a.entries) v = rng.UniformRange(-1.0, 1.0);
    mats.push_back(std::move(a));
  }

  auto bench = [&](auto&& solve) {
    double max_eps = 0.0;
    auto t0 = Clock::now();
    for (const auto& a : mats) {
      MatrixNashSolution sol = solve(a);
      max_eps = std::max(max_eps, sol.eps);
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return std::pair<double, double>{secs / samples, max_eps};
  };

  auto [lp_time, lp_eps] =
      bench([](const PayoffMatrix& a) { return SolveLp(a); });
  auto [mwu_time, mwu_eps] =
      bench([](const PayoffMatrix& a) { return SolveMwu(a); });

  std::printf("solver      mean_s_per_sample  max_eps\n");
  std::printf("lp          %.6f           %.3e\n", lp_time, lp_eps);
  std::printf("mwu         %.6f           %.3e\n", mwu_time, mwu_eps);
  return 0;
}

}  // namespace nashmg
