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
#include <vector>

#include "core/oracle.hpp"
#include "core/types.hpp"
#include "dynamics/environment.hpp"

namespace arw {

// Embedded jump chain of the continuous-time dynamics: each active particle
// carries rate (1 + lambda); a step picks a site with probability
// proportional to its active count, executes that site's next stack
// instruction, and advances the clock by an exponential holding time with
// rate (1 + lambda) * (total active count). Site and clock draws are keyed
// by (trial_seed, step), so trajectories replay exactly.

enum class OutcomeKind : std::uint8_t { kFixated = 0, kBudgetExhausted = 1 };

struct RunOutcome {
  OutcomeKind kind = OutcomeKind::kFixated;
  std::uint64_t steps = 0;
  double clock = 0.0;
  Configuration final_config;
};

class JumpChain {
 public:
  // Fixation experiment: the environment with the origin particle active,
  // on a window that grows whenever activity reaches its edge. Sites outside
  // the current window hold their (lazily sampled) sleeping particles.
  static JumpChain grow(const InstructionOracle& oracle,
                        const EnvironmentSampler& env, std::uint64_t trial_seed,
                        Region initial_window = {-4, 4});

  // Fixed-region experiment: particles stepping off the region are removed
  // and tallied.
  static JumpChain kill(const InstructionOracle& oracle,
                        const Configuration& initial, std::uint64_t trial_seed);

  bool fixated() const noexcept { return active_total_ == 0; }
  std::uint64_t steps() const noexcept { return steps_; }
  double clock() const noexcept { return clock_; }
  std::int64_t active_total() const noexcept { return active_total_; }
  const Region& window() const noexcept { return window_; }

  // One transition of the embedded chain. Error if already fixated.
  void jump_step();

  RunOutcome run_until(std::uint64_t step_budget);

  Configuration snapshot() const;

 private:
  JumpChain(const InstructionOracle& oracle, std::uint64_t trial_seed);

  void init_from(const Configuration& c);
  void grow_window();
  std::size_t select_site(std::int64_t target) const;
  void fenwick_add(std::size_t i, std::int64_t d);
  void fenwick_rebuild();
  std::uint64_t site_base(std::size_t i) const;

  InstructionOracle oracle_;
  InstructionCutoffs cut_;
  EnvironmentSampler env_{};
  bool growing_ = false;
  std::uint64_t trial_seed_ = 0;
  std::uint64_t sel_base_ = 0, clk_base_ = 0;

  Region window_{0, 0};
  std::vector<std::int64_t> st_;
  std::vector<std::uint64_t> odo_;
  std::vector<std::uint64_t> ibase_;
  std::vector<std::int64_t> fen_;  // Fenwick tree over active counts
  std::int64_t active_total_ = 0;
  std::uint64_t steps_ = 0;
  double clock_ = 0.0;
  std::uint64_t exited_left_ = 0, exited_right_ = 0;
};

}  // namespace arw
