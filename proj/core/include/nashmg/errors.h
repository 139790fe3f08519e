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

#ifndef NASHMG_ERRORS_H_
#define NASHMG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nashmg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input contains NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A zero-sum matrix game always has a value; an infeasible/unbounded LP
// indicates an internal bug and is surfaced rather than patched over.
class InfeasibleLpError : public Error {
 public:
  using Error::Error;
};

class MalformedInputError : public Error {
 public:
  using Error::Error;
};

class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

// Exact mixture best response would expand more history nodes than the
// configured budget; callers fall back to the approximate exploiter.
class HistoryBudgetExceededError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nashmg

#endif  // NASHMG_ERRORS_H_
