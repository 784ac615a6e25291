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
#include <string>
#include <vector>

#include "core/oracle.hpp"
#include "core/types.hpp"

namespace arw {

// Order in which unstable sites are toppled. The final configuration and
// odometer do not depend on the choice (abelian property); the policies
// exist so that independence can be exercised and tested.
enum class PolicyKind : std::uint8_t { kLeftmost = 0, kRandom = 1, kLifo = 2 };

struct Policy {
  PolicyKind kind = PolicyKind::kLifo;
  std::uint64_t seed = 0;  // used by kRandom only

  static Policy leftmost() { return {PolicyKind::kLeftmost, 0}; }
  static Policy random(std::uint64_t seed) { return {PolicyKind::kRandom, seed}; }
  static Policy lifo() { return {PolicyKind::kLifo, 0}; }
};

Policy policy_from_name(const std::string& name, std::uint64_t seed);
const char* to_string(PolicyKind k) noexcept;

struct ToppleEvent {
  std::int64_t site;
  Instruction instruction;
};

struct StabilizeOptions {
  Region target;  // must lie inside the configuration's region
  BoundaryMode mode = BoundaryMode::kKill;
  Policy policy = Policy::lifo();
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  // Instruction stacks are keyed by (site - stream_origin); shifting both
  // the interval and the origin replays the identical stacks elsewhere.
  std::int64_t stream_origin = 0;
  std::vector<ToppleEvent>* log = nullptr;  // optional per-topple trace
};

struct StabilizationResult {
  Configuration config;
  Odometer odometer;  // over the target
  BigInt topplings = 0;
  std::uint64_t frozen_left = 0;   // active particles held at the target endpoints
  std::uint64_t frozen_right = 0;  // (freeze mode; zero in kill mode)
  bool exhausted = false;          // budget ran out before stability
};

// Topple unstable target sites until none remain (or the budget runs out).
// kKill topples every target site and removes particles stepping outside
// the target; kFreeze topples only the open interior, so the endpoints
// accumulate particles that never move again. Sites of the configuration
// outside the target are left untouched.
StabilizationResult stabilize(const Configuration& c,
                              const InstructionOracle& oracle,
                              const StabilizeOptions& opt);

}  // namespace arw
