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

#include <vector>

#include "benchmark/benchmark.h"
#include "nashmg/exact_oracle.h"
#include "nashmg/markov_game.h"
#include "nashmg/matrix_game.h"
#include "nashmg/rng.h"

namespace nashmg {
namespace {

std::vector<PayoffMatrix> RandomMatrices(int m, int n, int count) {
  Rng rng(12345);
  std::vector<PayoffMatrix> mats;
  mats.reserve(count);
  for (int k = 0; k < count; ++k) {
    PayoffMatrix a(m, n);
    for (double& v : a.entries) v = rng.UniformRange(-1.0, 1.0);
    mats.push_back(std::move(a));
  }
  return mats;
}

void BM_SolveLp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  auto mats = RandomMatrices(m, n, 64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveLp(mats[i++ % mats.size()]));
  }
}
BENCHMARK(BM_SolveLp)->Args({3, 3})->Args({6, 6})->Args({10, 10})->Args({20, 20});

void BM_SolveMwu(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  auto mats = RandomMatrices(m, n, 64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SolveMwu(mats[i++ % mats.size()], 0.1, static_cast<int>(state.range(2))));
  }
}
BENCHMARK(BM_SolveMwu)->Args({6, 6, 1000})->Args({6, 6, 10000});

void BM_ExactNashSolve(benchmark::State& state) {
  TabularMG mg = GenerateRandomMg(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)),
                                  static_cast<int>(state.range(1)),
                                  static_cast<int>(state.range(2)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactNashSolve(mg));
  }
}
BENCHMARK(BM_ExactNashSolve)->Args({3, 3, 3})->Args({6, 6, 6});

}  // namespace
}  // namespace nashmg

BENCHMARK_MAIN();
