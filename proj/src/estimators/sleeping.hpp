// Copyright 2026 The Artifact Authors
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

#pragma once

#include <cstdint>
#include <optional>

#include "core/oracle.hpp"
#include "core/types.hpp"
#include "estimators/estimate.hpp"

namespace arw {

struct SleepingSpec {
  double lambda = 1.0;
  std::uint64_t n = 100;        // interval length
  double density = 1.0;         // initial particle density in (0, 1]
  bool all_active = true;       // start particles active (sleeping otherwise)
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;     // 0 = unlimited topplings per trial
  std::int64_t origin = 0;      // interval is [origin, origin + n - 1]
  unsigned threads = 1;
};

// The initial state of one trial: density = 1 fills every site, density < 1
// places floor(density * n) particles at uniform positions; all_active
// controls whether lone particles start active or sleeping. The same spec
// and trial index always build the same state.
Configuration initial_placement(const SleepingSpec& spec, std::uint64_t trial);

// The trial's instruction oracle; paired with initial_placement this pins
// down the whole trial.
InstructionOracle trial_oracle(const SleepingSpec& spec, std::uint64_t trial);

// Mean sleeping fraction X_n / n after stabilizing [origin, origin+n-1]
// with particles killed at the boundary. density = 1 places one active
// particle per site; density < 1 places floor(density * n) particles at
// uniform positions. Instruction stacks are keyed relative to the origin,
// so translating the interval replays identical trials.
// The estimate's point is the mean fraction with a normal-approximation CI;
// successes carries the total sleeper count across decided trials.
Estimate sleeping_fraction(const SleepingSpec& spec);

// X_n / n at density 1 as a proxy for the critical density.
Estimate estimate_rho_c(double lambda, std::uint64_t n, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads = 1);

// P[X_n >= (rho_c_ref + delta) * n] at density 1 (Bernoulli, Wilson CI).
Estimate tail_probability(double lambda, std::uint64_t n, double delta,
                          double rho_c_ref, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads = 1);

// Windowed sleeper audit of one stable configuration: every window of
// window_len consecutive sites must hold at most
// threshold_density * window_len sleepers.
struct WindowCheck {
  bool ok = true;
  std::uint64_t worst_count = 0;
  std::optional<std::int64_t> worst_window_lo;
  std::uint64_t violations = 0;
};

WindowCheck windowed_sleeper_check(const Configuration& c,
                                   std::int64_t window_len,
                                   double threshold_density);

}  // namespace arw
