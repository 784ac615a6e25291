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

#include "estimators/fixation.hpp"

#include <atomic>
#include <set>
#include <string>

#include "common/parallel.hpp"
#include "common/prf.hpp"
#include "dynamics/jump_chain.hpp"

namespace arw {

namespace {

// Sub-stream labels under the kDerive tag; stable, part of reproducibility.
enum : std::uint64_t { kEnvSeed = 1, kOracleSeed = 2, kTrialSeed = 3, kCellSeed = 4 };

}  // namespace

FixationResult fixation_probability(const FixationSpec& spec) {
  validate_lambda(spec.lambda);
  if (!(spec.rho > 0.0) || !(spec.rho < 1.0))
    fail(Errc::kDomain,
         "rho = " + std::to_string(spec.rho) + " out of range: rho in (0,1)");
  if (spec.trials == 0) fail(Errc::kDomain, "trials must be >= 1");
  if (spec.step_budget == 0) fail(Errc::kDomain, "step_budget must be >= 1");

  std::atomic<std::uint64_t> fixated{0}, immediate{0}, censored{0};
  parallel_for(spec.trials, spec.threads, [&](std::uint64_t i) {
    InstructionOracle oracle{prf::derive_seed(spec.seed, kOracleSeed, i),
                             spec.lambda};
    EnvironmentSampler env{prf::derive_seed(spec.seed, kEnvSeed, i), spec.rho};
    std::uint64_t trial_seed = prf::derive_seed(spec.seed, kTrialSeed, i);
    JumpChain jc = JumpChain::grow(oracle, env, trial_seed);
    RunOutcome out = jc.run_until(spec.step_budget);
    if (out.kind == OutcomeKind::kFixated) {
      fixated.fetch_add(1, std::memory_order_relaxed);
      if (out.steps == 1) immediate.fetch_add(1, std::memory_order_relaxed);
    } else {
      censored.fetch_add(1, std::memory_order_relaxed);
    }
  });

  // A censored trial is undecided for "fixates eventually" but decided for
  // "fixates on the first instruction" (it did not).
  std::uint64_t decided = spec.trials - censored.load();
  FixationResult res;
  if (decided == 0) {
    // Every trial censored: only the trivial bracket survives.
    res.overall.trials = spec.trials;
    res.overall.censored = censored.load();
    res.overall.ci_hi = 1.0;
    res.overall.censored_high = 1.0;
    res.overall.seed = spec.seed;
  } else {
    res.overall = bernoulli_estimate(fixated.load(), decided, censored.load(),
                                     spec.seed);
  }
  res.immediate = bernoulli_estimate(immediate.load(), spec.trials, 0, spec.seed);
  return res;
}

std::vector<SweepCell> sweep_fixation(const std::vector<double>& lambdas,
                                      const std::vector<double>& rhos,
                                      std::uint64_t trials,
                                      std::uint64_t step_budget,
                                      std::uint64_t seed, unsigned threads) {
  if (lambdas.empty() || rhos.empty())
    fail(Errc::kDomain, "sweep grids must be non-empty");
  std::vector<SweepCell> cells;
  std::set<std::uint64_t> used;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = 0; j < rhos.size(); ++j) {
      SweepCell cell;
      cell.lambda = lambdas[i];
      cell.rho = rhos[j];
      cell.cell_seed = prf::derive_seed(seed, kCellSeed + i, j);
      if (!used.insert(cell.cell_seed).second)
        fail(Errc::kInternal, "derived sweep seeds collide; choose another seed");
      FixationSpec fs{cell.lambda, cell.rho, trials, step_budget, cell.cell_seed,
                      threads};
      cell.result = fixation_probability(fs);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace arw
