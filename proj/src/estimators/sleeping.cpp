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

#include "estimators/sleeping.hpp"

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "common/parallel.hpp"
#include "common/prf.hpp"
#include "core/stabilize.hpp"

namespace arw {

namespace {

enum : std::uint64_t { kOracleSeed = 21, kPlacementSeed = 22 };

void validate(const SleepingSpec& s) {
  validate_lambda(s.lambda);
  if (s.n == 0) fail(Errc::kDomain, "interval length n must be >= 1");
  if (!(s.density > 0.0) || s.density > 1.0)
    fail(Errc::kDomain, "density must lie in (0, 1]");
  if (s.trials == 0) fail(Errc::kDomain, "trials must be >= 1");
}

}  // namespace

Configuration initial_placement(const SleepingSpec& spec, std::uint64_t trial) {
  validate(spec);
  std::int64_t n = static_cast<std::int64_t>(spec.n);
  Region interval{spec.origin, spec.origin + n - 1};
  Configuration init(interval);
  if (spec.density == 1.0) {
    for (std::int64_t x = interval.lo; x <= interval.hi; ++x)
      init.at(x) = SiteState{1, !spec.all_active};
  } else {
    std::uint64_t particles =
        static_cast<std::uint64_t>(spec.density * static_cast<double>(spec.n));
    std::uint64_t pbase = prf::stream_base(
        prf::derive_seed(spec.seed, kPlacementSeed, trial), prf::kPlacement, 0);
    for (std::uint64_t p = 0; p < particles; ++p) {
      double u = prf::to_unit(prf::draw_u64(pbase, p));
      std::int64_t x =
          interval.lo + static_cast<std::int64_t>(u * static_cast<double>(n));
      if (x > interval.hi) x = interval.hi;
      SiteState& s = init.at(x);
      if (s.sleeping) {
        s = SiteState{2, false};  // stacking wakes; only relevant when active
      } else {
        ++s.count;
        s.sleeping = !spec.all_active && s.count == 1;
      }
    }
  }
  return init;
}

InstructionOracle trial_oracle(const SleepingSpec& spec, std::uint64_t trial) {
  return {prf::derive_seed(spec.seed, kOracleSeed, trial), spec.lambda};
}

Estimate sleeping_fraction(const SleepingSpec& spec) {
  validate(spec);
  std::int64_t n = static_cast<std::int64_t>(spec.n);
  Region interval{spec.origin, spec.origin + n - 1};

  std::vector<std::int64_t> sleepers(spec.trials, -1);  // -1 = censored
  parallel_for(spec.trials, spec.threads, [&](std::uint64_t t) {
    InstructionOracle oracle = trial_oracle(spec, t);
    Configuration init = initial_placement(spec, t);

    StabilizeOptions opt;
    opt.target = interval;
    opt.mode = BoundaryMode::kKill;
    opt.policy = Policy::lifo();
    opt.stream_origin = spec.origin;
    if (spec.budget > 0) opt.budget = spec.budget;
    StabilizationResult res = stabilize(init, oracle, opt);
    if (res.exhausted) return;
    sleepers[t] = static_cast<std::int64_t>(res.config.sleeping_sites());
  });

  std::uint64_t decided = 0, censored = 0, total_sleepers = 0;
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    if (sleepers[t] < 0) {
      ++censored;
      continue;
    }
    ++decided;
    total_sleepers += static_cast<std::uint64_t>(sleepers[t]);
    double frac = static_cast<double>(sleepers[t]) / static_cast<double>(spec.n);
    double d = frac - mean;
    mean += d / static_cast<double>(decided);
    m2 += d * (frac - mean);
  }
  if (decided == 0)
    fail(Errc::kDomain, "all trials exhausted their toppling budget");

  Estimate e;
  e.trials = spec.trials;
  e.successes = total_sleepers;
  e.censored = censored;
  e.seed = spec.seed;
  e.point = mean;
  double sd = decided > 1 ? std::sqrt(m2 / static_cast<double>(decided - 1)) : 0.0;
  double half = kZ95 * sd / std::sqrt(static_cast<double>(decided));
  e.ci_lo = mean - half;
  e.ci_hi = mean + half;
  if (e.ci_lo < 0.0) e.ci_lo = 0.0;
  if (e.ci_hi > 1.0) e.ci_hi = 1.0;
  e.censored_low = mean * static_cast<double>(decided) / static_cast<double>(spec.trials);
  e.censored_high = e.censored_low +
                    static_cast<double>(censored) / static_cast<double>(spec.trials);
  return e;
}

Estimate estimate_rho_c(double lambda, std::uint64_t n, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads) {
  SleepingSpec s;
  s.lambda = lambda;
  s.n = n;
  s.density = 1.0;
  s.all_active = true;
  s.trials = trials;
  s.seed = seed;
  s.threads = threads;
  return sleeping_fraction(s);
}

Estimate tail_probability(double lambda, std::uint64_t n, double delta,
                          double rho_c_ref, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads) {
  validate_lambda(lambda);
  if (n == 0) fail(Errc::kDomain, "interval length n must be >= 1");
  if (!(delta > 0.0)) fail(Errc::kDomain, "delta must be positive");
  if (trials == 0) fail(Errc::kDomain, "trials must be >= 1");
  std::int64_t ni = static_cast<std::int64_t>(n);
  Region interval{0, ni - 1};
  double cut = (rho_c_ref + delta) * static_cast<double>(n);

  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(trials, threads, [&](std::uint64_t t) {
    InstructionOracle oracle{prf::derive_seed(seed, kOracleSeed, t), lambda};
    Configuration init(interval);
    for (std::int64_t x = interval.lo; x <= interval.hi; ++x)
      init.at(x) = SiteState{1, false};
    StabilizeOptions opt;
    opt.target = interval;
    opt.mode = BoundaryMode::kKill;
    opt.policy = Policy::lifo();
    StabilizationResult res = stabilize(init, oracle, opt);
    hit[t] = static_cast<double>(res.config.sleeping_sites()) >= cut ? 1 : 0;
  });

  std::uint64_t successes = 0;
  for (auto h : hit) successes += h;
  return bernoulli_estimate(successes, trials, 0, seed);
}

WindowCheck windowed_sleeper_check(const Configuration& c,
                                   std::int64_t window_len,
                                   double threshold_density) {
  if (window_len < 1) fail(Errc::kDomain, "window length must be >= 1");
  if (!(threshold_density >= 0.0))
    fail(Errc::kDomain, "threshold density must be non-negative");
  WindowCheck chk;
  const Region& r = c.region();
  if (r.width() < window_len) return chk;
  double cap = threshold_density * static_cast<double>(window_len);
  std::uint64_t sum = 0;
  for (std::int64_t x = r.lo; x < r.lo + window_len; ++x)
    sum += c.at(x).sleeping ? 1 : 0;
  std::int64_t a = r.lo;
  for (;;) {
    if (sum > chk.worst_count || !chk.worst_window_lo) {
      chk.worst_count = sum;
      chk.worst_window_lo = a;
    }
    if (static_cast<double>(sum) > cap) {
      chk.ok = false;
      ++chk.violations;
    }
    if (a + window_len - 1 >= r.hi) break;
    sum += c.at(a + window_len).sleeping ? 1 : 0;
    sum -= c.at(a).sleeping ? 1 : 0;
    ++a;
  }
  return chk;
}

}  // namespace arw
