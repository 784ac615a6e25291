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
#include <string>
#include <vector>

namespace arw {

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions
  bool passed() const { return failures == 0; }
};

struct VerifyScale {
  std::uint64_t instances = 500;     // abelian / uniqueness / conservation
  std::uint64_t orders = 20;         // replays per abelian instance
  std::uint64_t mc_trials = 100000;  // per catalog entry in the oracle suite
  std::uint64_t grid_trials = 10000; // per cell in the bound suite
  std::uint64_t step_budget = 100000;
  unsigned threads = 1;
};

// Replays of one stabilization as random legal toppling orders with the
// exact per-site multiplicities of the reference run; final configurations
// must match byte for byte.
SuiteResult check_abelian(std::uint64_t seed, const VerifyScale& sc);

// Site-selection policies must not change the final configuration, the
// odometer, or the exit tallies.
SuiteResult check_uniqueness(std::uint64_t seed, const VerifyScale& sc);

// Particle bookkeeping: mass on sites plus exit tallies is conserved, final
// states are stable where they must be, and the canonical text round-trips.
SuiteResult check_conservation(std::uint64_t seed, const VerifyScale& sc);

// Monte Carlo terminal distributions (jump chain and driven stabilization)
// against the exact absorption solve on a fixed small-instance catalog.
SuiteResult check_oracle_agreement(std::uint64_t seed, const VerifyScale& sc);

// Fixation probability never falls below lambda/(1+lambda) beyond noise,
// and the first-instruction sub-estimate matches it exactly in expectation.
SuiteResult check_lower_bound(std::uint64_t seed, const VerifyScale& sc);

// "all" or a comma-separated subset of
// {abelian, uniqueness, conservation, oracle, bound}.
std::vector<std::string> parse_suite_list(const std::string& suites);

std::vector<SuiteResult> run_verify_suites(const std::string& suites,
                                           std::uint64_t seed,
                                           const VerifyScale& sc);

}  // namespace arw

