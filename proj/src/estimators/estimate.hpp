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

#include "common/error.hpp"

namespace arw {

// 95% confidence z, pinned so results are bit-stable.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = kZ95);

// A Monte Carlo estimate. Censored trials (budget ran out before the
// trial's outcome was decided) are counted separately and never folded
// into the point estimate; the bracket [point_if_all_fail, point_if_all_succeed]
// is reported alongside when censoring occurred.
struct Estimate {
  double point = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t censored = 0;
  double censored_low = 0.0;   // point if every censored trial were a failure
  double censored_high = 0.0;  // point if every censored trial were a success
  std::uint64_t seed = 0;
};

// Bernoulli estimate from decided trials, with the censoring bracket over
// all trials.
Estimate bernoulli_estimate(std::uint64_t successes, std::uint64_t decided,
                            std::uint64_t censored, std::uint64_t seed);

double lower_bound(double lambda);

}  // namespace arw
