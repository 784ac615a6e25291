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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "common/bigint.hpp"
#include "core/types.hpp"

namespace arw {

// Exact terminal distribution of the small-system dynamics: enumerate the
// reachable states of the embedded chain (kill boundary at the region edge),
// split transient from absorbed, and solve the absorption equations over
// exact rationals. Restricted to at most 3 particles on a region of width
// at most 5, which keeps the state space in the hundreds.
struct AbsorptionResult {
  // Absorbing configuration (canonical text) -> exact probability.
  std::map<std::string, BigRat> distribution;
  std::size_t transient_states = 0;
  std::size_t absorbing_states = 0;
  BigRat prob_any_sleeping = 0;  // mass on terminal states with a sleeper
};

AbsorptionResult absorption_oracle(const Configuration& initial, double lambda);

// Total variation distance between two distributions over canonical
// configuration texts (missing keys count as zero).
double tv_distance(const std::map<std::string, double>& p,
                   const std::map<std::string, double>& q);

}  // namespace arw
