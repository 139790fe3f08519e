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
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nashmg/svg_chart.h"

namespace nashmg {
namespace {

namespace fs = std::filesystem;

std::string ReadWholeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("nashmg_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string File(const std::string& name) const {
    return (path / name).string();
  }
};

TEST_CASE("Algorithm names round trip") {
  for (Algorithm algo :
       {Algorithm::kNashVi, Algorithm::kNashViExploiter, Algorithm::kNashQ,
        Algorithm::kSp, Algorithm::kFsp, Algorithm::kDo}) {
    CHECK(ParseAlgorithm(AlgorithmName(algo)) == algo);
  }
  CHECK_THROWS_AS(ParseAlgorithm("pgq"), ConfigError);
}

TEST_CASE("Config file parsing") {
  TempDir dir;
  std::string path = dir.File("config.ini");
  {
    std::ofstream out(path);
    out << "# a comment\n"
        << "S = 4\n"
        << "A = 3\n"
        << "B = 2\n"
        << "H = 5\n"
        << "env_seed = 9\n"
        << "algorithm = nash_vi, sp  # trailing comment\n"
        << "episodes = 1000\n"
        << "eval_every = 250\n"
        << "seeds = 0, 1, 2\n"
        << "alpha = 0.2\n"
        << "gamma = 0.9\n"
        << "eval_mode = approx_exploiter\n"
        << "log_scale = true\n";
  }
  ExperimentConfig config = ParseConfigFile(path);
  CHECK(config.env_s == 4);
  CHECK(config.env_a == 3);
  CHECK(config.env_b == 2);
  CHECK(config.env_h == 5);
  CHECK(config.env_seed == 9);
  REQUIRE(config.algorithms.size() == 2);
  CHECK(config.algorithms[1] == Algorithm::kSp);
  CHECK(config.episodes == 1000);
  CHECK(config.seeds == std::vector<uint64_t>{0, 1, 2});
  CHECK(config.alpha == 0.2);
  CHECK(config.gamma == 0.9);
  CHECK(config.eval_mode == EvalMode::kApproxExploiter);
  CHECK(config.log_scale);
  CHECK_NOTHROW(config.Validate());
}

TEST_CASE("Config rejects unknown keys and bad values") {
  ExperimentConfig config;
  CHECK_THROWS_AS(ApplyConfigKeyValue(&config, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(ApplyConfigKeyValue(&config, "episodes", "ten"),
                  ConfigError);
  CHECK_THROWS_AS(ApplyConfigKeyValue(&config, "log_scale", "maybe"),
                  ConfigError);

  config.episodes = 1000;
  config.eval_every = 300;  // does not divide
  CHECK_THROWS_AS(config.Validate(), ConfigError);
  config.eval_every = 250;
  CHECK_NOTHROW(config.Validate());
  config.seeds.clear();
  CHECK_THROWS_AS(config.Validate(), ConfigError);
}

TEST_CASE("Run log CSV schema and lossless values") {
  TempDir dir;
  std::string path = dir.File("log.csv");
  std::vector<RunLogRow> rows = {
      {"nash_vi", 3, 0, 1.0 / 3.0, 12},
      {"nash_vi", 3, 250, 0.062500000000000014, 0},
  };
  WriteRunLogCsv(path, rows);
  std::string text = ReadWholeFile(path);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "algorithm,seed,episode,exploitability,wall_time_ms");
  std::getline(in, line);
  // Fields parse back to the exact doubles written.
  size_t p1 = line.rfind(',');
  size_t p2 = line.rfind(',', p1 - 1);
  CHECK(std::stod(line.substr(p2 + 1, p1 - p2 - 1)) == 1.0 / 3.0);
  std::getline(in, line);
  p1 = line.rfind(',');
  p2 = line.rfind(',', p1 - 1);
  CHECK(std::stod(line.substr(p2 + 1, p1 - p2 - 1)) ==
        0.062500000000000014);
}

TEST_CASE("RunTraining is deterministic and logs the full grid") {
  ExperimentConfig config;
  config.episodes = 500;
  config.eval_every = 250;
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 2);
  SidePolicy max_a, min_a, max_b, min_b;
  std::vector<RunLogRow> rows_a =
      RunTraining(mg, Algorithm::kNashVi, config, 11, &max_a, &min_a);
  std::vector<RunLogRow> rows_b =
      RunTraining(mg, Algorithm::kNashVi, config, 11, &max_b, &min_b);
  REQUIRE(rows_a.size() == 3);
  CHECK(rows_a[0].episode == 0);
  CHECK(rows_a[1].episode == 250);
  CHECK(rows_a[2].episode == 500);
  for (size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].exploitability == rows_b[i].exploitability);
    CHECK(rows_a[i].exploitability >= -1e-6);
  }
  CHECK(std::get<MarkovPolicy>(max_a).probs ==
        std::get<MarkovPolicy>(max_b).probs);

  // A different seed gives a different trajectory.
  std::vector<RunLogRow> rows_c =
      RunTraining(mg, Algorithm::kNashVi, config, 12, nullptr, nullptr);
  CHECK(rows_c[2].exploitability != rows_a[2].exploitability);
}

TEST_CASE("Baseline runs log strictly increasing episode counts") {
  ExperimentConfig config;
  config.episodes = 2000;
  config.eval_every = 500;
  config.br_episodes = 500;
  TabularMG mg = GenerateRandomMg(2, 2, 2, 2, 3);
  for (Algorithm algo : {Algorithm::kSp, Algorithm::kFsp, Algorithm::kDo}) {
    std::vector<RunLogRow> rows =
        RunTraining(mg, algo, config, 0, nullptr, nullptr);
    REQUIRE(rows.size() >= 2);
    CHECK(rows.front().episode == 0);
    for (size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].episode > rows[i - 1].episode);
    }
    CHECK(rows.back().episode >= config.episodes);
  }
}

TEST_CASE("Approximate exploitability is sane on a Nash pair") {
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 4);
  NashSolutionMG sol = ExactNashSolve(mg);
  ExperimentConfig config;
  config.exploiter_episodes = 10000;
  config.approx_eval_episodes = 2000;
  Rng rng(0);
  double approx =
      ApproxExploitability(mg, sol.mu_star, sol.nu_star, config, rng);
  double exact = Exploitability(mg, sol.mu_star, sol.nu_star);
  CHECK(exact <= 1e-6);
  CHECK(approx <= exact + 0.1);
}

TEST_CASE("MeasureExploitability falls back on budget overflow") {
  TabularMG mg = GenerateRandomMg(3, 3, 3, 3, 5);
  MixturePolicy mix;
  mix.components = {MarkovPolicy::Uniform(3, 3, 3),
                    MarkovPolicy::Uniform(3, 3, 3)};
  mix.meta = MixedStrategy{{0.5, 0.5}};
  ExperimentConfig config;
  config.node_budget = 10;  // forces the approximate path
  config.exploiter_episodes = 2000;
  config.approx_eval_episodes = 500;
  Rng rng(1);
  double value = MeasureExploitability(mg, mix, MarkovPolicy::Uniform(3, 3, 3),
                                       config, EvalMode::kExact, rng);
  CHECK(std::isfinite(value));
}

TEST_CASE("CmdGenerateEnv is idempotent") {
  TempDir dir;
  std::string p1 = dir.File("a.json"), p2 = dir.File("b.json");
  CHECK(CmdGenerateEnv(3, 3, 3, 3, 1, p1) == 0);
  CHECK(CmdGenerateEnv(3, 3, 3, 3, 1, p2) == 0);
  CHECK(ReadWholeFile(p1) == ReadWholeFile(p2));
  TabularMG mg = ReadMgFile(p1);
  mg.Validate();
}

TEST_CASE("CmdTrain writes identical artifacts across runs") {
  TempDir dir;
  ExperimentConfig config;
  config.env_seed = 6;
  config.episodes = 500;
  config.eval_every = 250;
  config.seeds = {0, 1};
  config.output_dir = dir.File("run1");
  CHECK(CmdTrain(config) == 0);
  config.output_dir = dir.File("run2");
  CHECK(CmdTrain(config) == 0);
  CHECK(ReadWholeFile(dir.File("run1") + "/runlog.csv") ==
        ReadWholeFile(dir.File("run2") + "/runlog.csv"));
  CHECK(ReadWholeFile(dir.File("run1") + "/policy_nash_vi_seed0.json") ==
        ReadWholeFile(dir.File("run2") + "/policy_nash_vi_seed0.json"));
  // Policies are re-loadable.
  auto [max_side, min_side] =
      ReadPolicyFile(dir.File("run1") + "/policy_nash_vi_seed1.json");
  std::get<MarkovPolicy>(max_side).Validate();
}

TEST_CASE("CmdTrain with a zero budget writes one row per run") {
  TempDir dir;
  ExperimentConfig config;
  config.episodes = 0;
  config.eval_every = 250;
  config.output_dir = dir.File("zero");
  CHECK(CmdTrain(config) == 0);
  std::string csv = ReadWholeFile(dir.File("zero") + "/runlog.csv");
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  std::getline(in, line);  // header
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1);
  CHECK(csv.find("nash_vi,0,0,") != std::string::npos);
}

TEST_CASE("CmdCompare merges sorted rows and draws one curve per algorithm") {
  TempDir dir;
  ExperimentConfig config;
  config.env_seed = 7;
  config.episodes = 500;
  config.eval_every = 250;
  config.algorithms = {Algorithm::kNashQ, Algorithm::kNashVi};
  config.seeds = {0, 1, 2};
  config.output_dir = dir.File("cmp");
  CHECK(CmdCompare(config) == 0);

  std::string csv = ReadWholeFile(dir.File("cmp") + "/compare.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> keys;
  while (std::getline(in, line)) {
    keys.push_back(line.substr(0, line.rfind(',')));
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.size() == 2 * 3 * 3);

  std::string svg = ReadWholeFile(dir.File("cmp") + "/compare.svg");
  size_t curves = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++curves;
  }
  CHECK(curves == 2);
  CHECK(svg.find("nash_q") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);  // min-max band
}

TEST_CASE("WorkerThreadCount honors NASHMG_THREADS") {
  setenv("NASHMG_THREADS", "3", 1);
  CHECK(WorkerThreadCount() == 3);
  setenv("NASHMG_THREADS", "junk", 1);
  CHECK(WorkerThreadCount() >= 1);
  unsetenv("NASHMG_THREADS");
  CHECK(WorkerThreadCount() >= 1);
}

TEST_CASE("SVG writer handles log scale and empty input") {
  ChartOptions options;
  options.log_y = true;
  ChartSeries s;
  s.label = "curve";
  s.x = {0, 1, 2};
  s.y = {1.0, 0.1, 0.0};  // zero must clamp, not produce -inf
  std::string svg = RenderLineChartSvg({s}, options);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
  CHECK_NOTHROW(RenderLineChartSvg({}, ChartOptions{}));
}

}  // namespace
}  // namespace nashmg
