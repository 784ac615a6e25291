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

#include "estimators/estimate.hpp"

#include <cmath>
#include <string>

namespace arw {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) fail(Errc::kDomain, "Wilson interval needs at least one trial");
  if (successes > trials)
    fail(Errc::kDomain, "successes exceed trials");
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  Interval iv{center - half, center + half};
  if (iv.lo < 0.0) iv.lo = 0.0;
  if (iv.hi > 1.0) iv.hi = 1.0;
  return iv;
}

Estimate bernoulli_estimate(std::uint64_t successes, std::uint64_t decided,
                            std::uint64_t censored, std::uint64_t seed) {
  if (decided == 0)
    fail(Errc::kDomain, "no decided trials to estimate from");
  Estimate e;
  e.trials = decided + censored;
  e.successes = successes;
  e.censored = censored;
  e.seed = seed;
  e.point = static_cast<double>(successes) / static_cast<double>(decided);
  Interval iv = wilson_interval(successes, decided);
  e.ci_lo = iv.lo;
  e.ci_hi = iv.hi;
  double all = static_cast<double>(e.trials);
  e.censored_low = static_cast<double>(successes) / all;
  e.censored_high = static_cast<double>(successes + censored) / all;
  return e;
}

double lower_bound(double lambda) {
  if (!(lambda > 0.0))
    fail(Errc::kDomain, "lambda must be positive, got " + std::to_string(lambda));
  return lambda / (1.0 + lambda);
}

}  // namespace arw
