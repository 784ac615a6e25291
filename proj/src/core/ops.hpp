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
#include <utility>
#include <vector>

#include "core/oracle.hpp"
#include "core/types.hpp"

namespace arw {

// A site is stable when it holds no particle or a sleeping one.
bool is_stable(const Configuration& c, std::int64_t x);

// Execute one instruction at x, which must hold at least one active
// particle. Moves off the region edge are tallied as exited in kKill mode
// and are an error in kFreeze mode (freezing is a property of stabilization
// targets; a bare instruction cannot leave the region). Sleep converts a
// lone active particle to sleeping and is a no-op at count >= 2.
Configuration apply_instruction(const Configuration& c, std::int64_t x,
                                Instruction ins, BoundaryMode mode);

// One toppling at x: consume the next unread stack instruction
// (index odometer[x] + 1) and advance the odometer. x must be unstable.
std::pair<Configuration, Odometer> topple(const Configuration& c,
                                          const Odometer& u,
                                          const InstructionOracle& oracle,
                                          std::int64_t x, BoundaryMode mode);

// Fold topple over a site sequence; every step must be legal. On an illegal
// step the error names the offending position in the sequence.
std::pair<Configuration, Odometer> topple_sequence(
    const Configuration& c, const Odometer& u, const InstructionOracle& oracle,
    const std::vector<std::int64_t>& sites, BoundaryMode mode);

}  // namespace arw
