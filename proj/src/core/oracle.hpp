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
#include "common/prf.hpp"
#include "core/types.hpp"

namespace arw {

// Site-wise instruction stacks. Stack entry (site, index), index >= 1, is an
// i.i.d. draw: left and right each with probability 1/(2(1+lambda)), sleep
// with probability lambda/(1+lambda). Draws are pure in (seed, site, index):
// the same triple always yields the same instruction, independent of what
// else was read, so stacks can be consumed in any order and replayed.
struct InstructionOracle {
  std::uint64_t seed = 0;
  double lambda = 1.0;
};

inline void validate_lambda(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1e18))
    fail(Errc::kDomain, "lambda must be a positive real (finite), got " +
                            std::to_string(lambda));
}

// 64-bit integer cutoffs for the three-way instruction split; the marginal
// law is exact to within 2^-64 per draw.
struct InstructionCutoffs {
  std::uint64_t left_end = 0;   // u <  left_end          -> left
  std::uint64_t right_end = 0;  // u <  right_end         -> right
                                // otherwise               -> sleep
  explicit InstructionCutoffs(double lambda) {
    validate_lambda(lambda);
    double p_move = 1.0 / (2.0 * (1.0 + lambda));
    left_end = prf::cutoff_from_prob(p_move);
    right_end = prf::cutoff_from_prob(2.0 * p_move);
  }

  Instruction decode(std::uint64_t u) const noexcept {
    if (u < left_end) return Instruction::kLeft;
    if (u < right_end) return Instruction::kRight;
    return Instruction::kSleep;
  }
};

inline std::uint64_t instruction_stream_base(const InstructionOracle& o,
                                             std::int64_t site) noexcept {
  return prf::stream_base(o.seed, prf::kInstruction,
                          static_cast<std::uint64_t>(site));
}

// Random access into a stack: O(1) in the index.
inline Instruction instruction_at(const InstructionOracle& o, std::int64_t site,
                                  std::uint64_t index) {
  if (index == 0) fail(Errc::kDomain, "instruction index starts at 1");
  InstructionCutoffs cut(o.lambda);
  return cut.decode(prf::draw_u64(instruction_stream_base(o, site), index));
}

}  // namespace arw
