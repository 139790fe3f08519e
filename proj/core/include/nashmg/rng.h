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

#ifndef NASHMG_RNG_H_
#define NASHMG_RNG_H_

#include <cstdint>
#include <random>
#include <span>

#include "nashmg/errors.h"

namespace nashmg {

// Seedable deterministic generator. All conversions from raw 64-bit draws are
// done here (not via std:: distributions, whose output is
// implementation-defined), so the same seed yields bit-identical streams on
// every platform. Split() derives independent named streams from the original
// seed, independent of how many draws were consumed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(Mix(seed)) {}

  // Uniform double in [0, 1).
  double Uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double UniformRange(double lo, double hi) {
    return lo + (hi - lo) * Uniform();
  }

  // Uniform integer in [0, n).
  int UniformInt(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(gen_()) * static_cast<uint64_t>(n)) >>
        64);
  }

  // Samples an index from a probability vector (assumed normalized).
  int SampleCategorical(std::span<const double> probs) {
    double u = Uniform();
    double cum = 0.0;
    int last_positive = 0;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
      if (probs[i] > 0.0) last_positive = i;
      cum += probs[i];
      if (u < cum) return i;
    }
    return last_positive;
  }

  // Independent stream derived from the construction seed and a stream id.
  Rng Split(uint64_t stream) const {
    return Rng(Mix(seed_ ^ Mix(stream + 0x9E3779B97F4A7C15ULL)));
  }

  uint64_t seed() const { return seed_; }

 private:
  // SplitMix64 finalizer.
  static uint64_t Mix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace nashmg

#endif  // NASHMG_RNG_H_
