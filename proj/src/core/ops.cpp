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

#include "core/ops.hpp"

#include <string>

namespace arw {

bool is_stable(const Configuration& c, std::int64_t x) { return c.at(x).stable(); }

namespace {

void arrive(Configuration& c, std::int64_t x) {
  SiteState& s = c.at(x);
  if (s.sleeping) {
    // Arrival wakes the sleeper: s + 1 = 2 active.
    s.sleeping = false;
    s.count = 2;
  } else {
    ++s.count;
  }
}

}  // namespace

Configuration apply_instruction(const Configuration& c, std::int64_t x,
                                Instruction ins, BoundaryMode mode) {
  const SiteState& s = c.at(x);
  if (s.count == 0 || s.sleeping)
    fail(Errc::kIllegalTopple,
         "no active particle at site " + std::to_string(x));
  Configuration out = c;
  switch (ins) {
    case Instruction::kSleep:
      if (s.count == 1) {
        out.at(x).sleeping = true;
      }
      // Sleep at count >= 2 does nothing.
      return out;
    case Instruction::kLeft:
    case Instruction::kRight: {
      std::int64_t dst = x + (ins == Instruction::kRight ? 1 : -1);
      --out.at(x).count;
      if (c.region().contains(dst)) {
        arrive(out, dst);
      } else if (mode == BoundaryMode::kKill) {
        if (dst < c.region().lo)
          out.add_exited_left(1);
        else
          out.add_exited_right(1);
      } else {
        fail(Errc::kOutOfRegion,
             "move from site " + std::to_string(x) +
                 " leaves the region; freeze mode requires an in-region destination");
      }
      return out;
    }
  }
  fail(Errc::kInternal, "unknown instruction");
}

std::pair<Configuration, Odometer> topple(const Configuration& c,
                                          const Odometer& u,
                                          const InstructionOracle& oracle,
                                          std::int64_t x, BoundaryMode mode) {
  if (is_stable(c, x))
    fail(Errc::kIllegalTopple, "site " + std::to_string(x) + " is stable");
  Instruction ins = instruction_at(oracle, x, u.at(x) + 1);
  Configuration next = apply_instruction(c, x, ins, mode);
  Odometer nu = u;
  nu.increment(x);
  return {std::move(next), std::move(nu)};
}

std::pair<Configuration, Odometer> topple_sequence(
    const Configuration& c, const Odometer& u, const InstructionOracle& oracle,
    const std::vector<std::int64_t>& sites, BoundaryMode mode) {
  Configuration cfg = c;
  Odometer odo = u;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    try {
      auto [nc, no] = topple(cfg, odo, oracle, sites[i], mode);
      cfg = std::move(nc);
      odo = std::move(no);
    } catch (const Error& e) {
      if (e.code() == Errc::kIllegalTopple)
        fail(Errc::kIllegalTopple, "position " + std::to_string(i) +
                                       " of sequence: " + e.what());
      throw;
    }
  }
  return {std::move(cfg), std::move(odo)};
}

}  // namespace arw
