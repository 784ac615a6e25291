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

#include "procedure/stage.hpp"

#include <string>

namespace arw {

namespace {

constexpr std::int64_t kMaxStageRadius = 200'000'000;

}  // namespace

StageReport run_stage(const Configuration& prev, const ProcedureParams& p,
                      unsigned n, const InstructionOracle& oracle,
                      const EnvironmentSampler& env, std::uint64_t budget,
                      std::vector<ToppleEvent>* log) {
  p.validate();
  env.validate();
  std::int64_t r = p.pow_k(n + 1);
  if (r > kMaxStageRadius)
    fail(Errc::kDomain, "stage window [-k^" + std::to_string(n + 1) + ", k^" +
                            std::to_string(n + 1) +
                            "] too large to materialize");
  Region window{-r, r};
  if (!window.contains(prev.region()))
    fail(Errc::kOutOfRegion,
         "previous state extends beyond the level-" + std::to_string(n + 1) +
             " window");

  StageReport rep;
  rep.n = n;
  rep.initial = Configuration(window);
  for (std::int64_t x = window.lo; x <= window.hi; ++x) {
    if (prev.region().contains(x))
      rep.initial.at(x) = prev.at(x);
    else if (env.occupied(x))
      rep.initial.at(x) = SiteState{1, true};
  }
  rep.initial.add_exited_left(prev.exited_left());
  rep.initial.add_exited_right(prev.exited_right());

  StabilizeOptions opt;
  opt.target = window;
  opt.mode = BoundaryMode::kFreeze;
  opt.policy = Policy::lifo();
  opt.budget = budget;
  opt.log = log;
  StabilizationResult res = stabilize(rep.initial, oracle, opt);

  rep.final_config = std::move(res.config);
  rep.odometer = std::move(res.odometer);
  rep.odometer_sum = rep.odometer.sum();
  rep.frozen_left = res.frozen_left;
  rep.frozen_right = res.frozen_right;
  rep.exhausted = res.exhausted;
  rep.good = classify_good(rep.final_config, n + 1, p);
  rep.flags = detect_events(rep.final_config, rep.odometer, n, p);
  return rep;
}

InductiveRun run_inductive(const ProcedureParams& p,
                           const InstructionOracle& oracle,
                           const EnvironmentSampler& env, unsigned max_stage,
                           std::uint64_t budget_per_stage) {
  p.validate();
  env.validate();
  InductiveRun run;
  Configuration prev = make_omega_star(env, Region{-1, 1});
  for (unsigned n = 0; n < max_stage; ++n) {
    StageReport rep = run_stage(prev, p, n, oracle, env, budget_per_stage);
    bool stop_exhausted = rep.exhausted;
    bool stop_settled = rep.frozen_left + rep.frozen_right == 0;
    prev = rep.final_config;
    run.stages.push_back(std::move(rep));
    if (stop_exhausted) {
      run.exhausted = true;
      break;
    }
    if (stop_settled) {
      run.halted_no_frozen = true;
      break;
    }
  }
  return run;
}

}  // namespace arw
