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

#include "estimators/estimate.hpp"

namespace arw {

struct FixationSpec {
  double lambda = 1.0;
  double rho = 0.5;
  std::uint64_t trials = 1000;
  std::uint64_t step_budget = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Fraction of trials (independent environments, the origin particle active)
// that fixate within the step budget. "immediate" is the sub-estimate of
// trials that fixate on the very first instruction, whose probability is
// exactly lambda / (1 + lambda).
struct FixationResult {
  Estimate overall;
  Estimate immediate;
};

FixationResult fixation_probability(const FixationSpec& spec);

struct SweepCell {
  double lambda = 0.0;
  double rho = 0.0;
  std::uint64_t cell_seed = 0;
  FixationResult result;
};

// Grid of fixation estimates; cell seeds are derived from the base seed and
// checked for collisions.
std::vector<SweepCell> sweep_fixation(const std::vector<double>& lambdas,
                                      const std::vector<double>& rhos,
                                      std::uint64_t trials,
                                      std::uint64_t step_budget,
                                      std::uint64_t seed, unsigned threads);

}  // namespace arw
