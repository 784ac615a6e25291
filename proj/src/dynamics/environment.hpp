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

// Lazily sampled i.i.d. Bernoulli(rho) occupancy of the whole line.
// occupied(x) is pure in (seed, x): windows can grow in any order and
// every run sees the same environment.
struct EnvironmentSampler {
  std::uint64_t seed = 0;
  double rho = 0.5;

  void validate() const {
    if (!(rho > 0.0) || !(rho < 1.0))
      fail(Errc::kDomain,
           "rho = " + std::to_string(rho) + " out of range: rho in (0,1)");
  }

  bool occupied(std::int64_t x) const noexcept {
    return prf::uniform(seed, prf::kEnvironment, static_cast<std::uint64_t>(x), 1) < rho;
  }
};

// The environment restricted to a window, all particles sleeping, except
// the origin particle which starts active. The window must contain 0.
// The origin is treated as occupied regardless of the environment draw.
Configuration make_omega_star(const EnvironmentSampler& env, Region window);

// Plain environment restriction: sleeping particles at occupied sites.
Configuration sample_environment(const EnvironmentSampler& env, Region window);

}  // namespace arw
