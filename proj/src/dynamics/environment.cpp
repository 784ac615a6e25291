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

#include "dynamics/environment.hpp"

namespace arw {

Configuration sample_environment(const EnvironmentSampler& env, Region window) {
  env.validate();
  Configuration c(window);
  for (std::int64_t x = window.lo; x <= window.hi; ++x) {
    if (env.occupied(x)) c.at(x) = SiteState{1, true};
  }
  return c;
}

Configuration make_omega_star(const EnvironmentSampler& env, Region window) {
  if (!window.contains(0))
    fail(Errc::kWindowExcludesOrigin,
         "window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
             "] does not contain the origin");
  Configuration c = sample_environment(env, window);
  c.at(0) = SiteState{1, false};
  return c;
}

}  // namespace arw
