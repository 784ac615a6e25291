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
#include <set>
#include <string>
#include <vector>

namespace arw {

// A run spec is a flat `key = value` text file.  Blank lines and lines whose
// first non-space character is '#' are skipped.  Keys are validated against
// the schema of the command named by the mandatory `command` key; unknown and
// duplicate keys are hard errors that name the offending line.
enum class Command {
  kSimulate,    // raw jump-chain trials, one record per trial
  kStabilize,   // driven stabilization trials, one record per trial
  kProcedure,   // nested-interval procedure, one record per stage per trial
  kFixation,    // fixation-probability estimate, single record
  kRhoc,        // sleeping-density estimate from all-occupied start
  kTail,        // tail probability of the sleeping count
  kSweep,       // fixation estimates over a (lambda, rho) grid
  kVerify,      // internal consistency suites
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);

struct RunSpec {
  Command command = Command::kVerify;

  double lambda = 1.0;
  double rho = 0.5;
  double density = 1.0;
  double delta = 0.0;
  double gamma = 0.0;
  double rho_c_ref = 0.0;

  std::int64_t n = 1;
  std::int64_t k = 0;
  std::int64_t max_stage = 1;

  std::uint64_t trials = 1;
  std::uint64_t step_budget = 100000;
  std::uint64_t budget = 0;  // 0 = unlimited
  std::uint64_t seed = 0;
  std::uint64_t policy_seed = 0;

  bool strict = false;
  bool all_active = true;

  std::string mode = "kill";
  std::string policy = "lifo";
  std::string suites = "all";

  std::vector<double> lambda_grid;
  std::vector<double> rho_grid;

  // Keys that appeared in the parsed text.  Serialization ignores this and
  // always emits the full effective schema, so canonical form is idempotent.
  std::set<std::string> present;

  bool has(const std::string& key) const { return present.count(key) != 0; }
};

bool operator==(const RunSpec& a, const RunSpec& b);

// Parses and validates; throws Error(kParse | kUnknownKey | kDuplicateKey |
// kDomain) with a message naming the key and, for syntax errors, the line.
RunSpec parse_run_spec(const std::string& text);

// Canonical form: `command` first, then every key of the command's schema in
// schema order with effective values.  parse(serialize(s)) == s, and
// serialize(parse(serialize(s))) is byte-identical to serialize(s).
std::string serialize_run_spec(const RunSpec& spec);

}  // namespace arw

