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
#include <limits>
#include <vector>

#include "core/stabilize.hpp"
#include "dynamics/environment.hpp"
#include "procedure/criteria.hpp"
#include "procedure/events.hpp"
#include "procedure/params.hpp"

namespace arw {

// One step of the inductive interval scheme: take the stabilized level-n
// state (frozen boundary particles included), extend it with freshly
// sampled environment up to [-k^(n+1), k^(n+1)], and stabilize with the
// boundary frozen. The report carries the assembled initial state, the
// outcome, the stage odometer, and the diagnostics.
struct StageReport {
  unsigned n = 0;
  Configuration initial;
  Configuration final_config;
  Odometer odometer;
  BigInt odometer_sum = 0;
  std::uint64_t frozen_left = 0, frozen_right = 0;
  bool exhausted = false;
  GoodReport good;
  EventFlags flags;
};

StageReport run_stage(const Configuration& prev, const ProcedureParams& p,
                      unsigned n, const InstructionOracle& oracle,
                      const EnvironmentSampler& env,
                      std::uint64_t budget = std::numeric_limits<std::uint64_t>::max(),
                      std::vector<ToppleEvent>* log = nullptr);

struct InductiveRun {
  std::vector<StageReport> stages;
  bool halted_no_frozen = false;  // a stage ended with no boundary actives
  bool exhausted = false;         // a stage ran out of toppling budget
};

// Start from the environment with an active origin particle on [-1, 1] and
// extend stage by stage. Stops after max_stage stages, when a stage leaves
// no frozen boundary particles, or when a budget is exhausted.
InductiveRun run_inductive(const ProcedureParams& p,
                           const InstructionOracle& oracle,
                           const EnvironmentSampler& env, unsigned max_stage,
                           std::uint64_t budget_per_stage =
                               std::numeric_limits<std::uint64_t>::max());

}  // namespace arw
