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

#include "io/runspec.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "common/error.hpp"

namespace arw {
namespace {

enum class Vt { kReal, kInt, kUint, kBool, kText, kRealList };

struct KeySpec {
  const char* key;
  Vt type;
  bool required;
};

const std::vector<KeySpec>& schema_for(Command c) {
  static const std::vector<KeySpec> simulate = {
      {"lambda", Vt::kReal, true},   {"rho", Vt::kReal, true},
      {"trials", Vt::kUint, false},  {"step_budget", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> stabilize = {
      {"lambda", Vt::kReal, true},      {"n", Vt::kInt, true},
      {"density", Vt::kReal, false},    {"all_active", Vt::kBool, false},
      {"mode", Vt::kText, false},       {"policy", Vt::kText, false},
      {"policy_seed", Vt::kUint, false}, {"budget", Vt::kUint, false},
      {"trials", Vt::kUint, false},     {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> procedure = {
      {"lambda", Vt::kReal, true},     {"rho", Vt::kReal, true},
      {"rho_c_ref", Vt::kReal, true},  {"strict", Vt::kBool, false},
      {"k", Vt::kInt, false},          {"delta", Vt::kReal, false},
      {"gamma", Vt::kReal, false},     {"max_stage", Vt::kInt, false},
      {"budget", Vt::kUint, false},    {"trials", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> fixation = {
      {"lambda", Vt::kReal, true},   {"rho", Vt::kReal, true},
      {"trials", Vt::kUint, false},  {"step_budget", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> rhoc = {
      {"lambda", Vt::kReal, true},  {"n", Vt::kInt, true},
      {"trials", Vt::kUint, false}, {"budget", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> tail = {
      {"lambda", Vt::kReal, true},  {"n", Vt::kInt, true},
      {"delta", Vt::kReal, true},   {"rho_c_ref", Vt::kReal, true},
      {"trials", Vt::kUint, false}, {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> sweep = {
      {"lambda_grid", Vt::kRealList, true}, {"rho_grid", Vt::kRealList, true},
      {"trials", Vt::kUint, false},         {"step_budget", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  static const std::vector<KeySpec> verify = {
      {"suites", Vt::kText, false},
      {"trials", Vt::kUint, false},
      {"seed", Vt::kUint, false},
  };
  switch (c) {
    case Command::kSimulate: return simulate;
    case Command::kStabilize: return stabilize;
    case Command::kProcedure: return procedure;
    case Command::kFixation: return fixation;
    case Command::kRhoc: return rhoc;
    case Command::kTail: return tail;
    case Command::kSweep: return sweep;
    case Command::kVerify: return verify;
  }
  fail(Errc::kInternal, "unhandled command schema");
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& v, int line, const std::string& key) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(Errc::kParse, "line " + std::to_string(line) + ": key '" + key +
                           "': expected integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& v, int line,
                         const std::string& key) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(Errc::kParse, "line " + std::to_string(line) + ": key '" + key +
                           "': expected non-negative integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& v, int line, const std::string& key) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
    fail(Errc::kParse, "line " + std::to_string(line) + ": key '" + key +
                           "': expected finite real, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(Errc::kParse, "line " + std::to_string(line) + ": key '" + key +
                         "': expected true or false, got '" + v + "'");
}

std::vector<double> parse_real_list(const std::string& v, int line,
                                    const std::string& key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    std::string item =
        trim(comma == std::string::npos ? v.substr(pos) : v.substr(pos, comma - pos));
    if (item.empty())
      fail(Errc::kParse, "line " + std::to_string(line) + ": key '" + key +
                             "': empty element in list '" + v + "'");
    out.push_back(parse_real(item, line, key));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string fmt_real(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) fail(Errc::kInternal, "real formatting failed");
  return std::string(buf, p);
}

std::string fmt_real_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt_real(xs[i]);
  }
  return out;
}

void require_range(bool ok, const std::string& key, const std::string& value,
                   const std::string& constraint) {
  if (!ok)
    fail(Errc::kDomain,
         key + " = " + value + " out of range: " + constraint);
}

void assign(RunSpec& s, const std::string& key, Vt type,
            const std::string& value, int line) {
  if (key == "lambda") {
    s.lambda = parse_real(value, line, key);
    require_range(s.lambda > 0 && std::isfinite(s.lambda), key, value,
                  "lambda > 0");
  } else if (key == "rho") {
    s.rho = parse_real(value, line, key);
    require_range(s.rho > 0 && s.rho < 1, key, value, "rho in (0,1)");
  } else if (key == "density") {
    s.density = parse_real(value, line, key);
    require_range(s.density > 0 && s.density <= 1, key, value,
                  "density in (0,1]");
  } else if (key == "delta") {
    s.delta = parse_real(value, line, key);
    require_range(s.delta > 0 && s.delta < 1, key, value, "delta in (0,1)");
  } else if (key == "gamma") {
    s.gamma = parse_real(value, line, key);
    require_range(s.gamma > 0 && s.gamma < 1, key, value, "gamma in (0,1)");
  } else if (key == "rho_c_ref") {
    s.rho_c_ref = parse_real(value, line, key);
    require_range(s.rho_c_ref > 0 && s.rho_c_ref < 1, key, value,
                  "rho_c_ref in (0,1)");
  } else if (key == "n") {
    s.n = parse_int(value, line, key);
    require_range(s.n >= 1, key, value, "n >= 1");
  } else if (key == "k") {
    s.k = parse_int(value, line, key);
    require_range(s.k >= 2, key, value, "k >= 2");
  } else if (key == "max_stage") {
    s.max_stage = parse_int(value, line, key);
    require_range(s.max_stage >= 1, key, value, "max_stage >= 1");
  } else if (key == "trials") {
    s.trials = parse_uint(value, line, key);
    require_range(s.trials >= 1, key, value, "trials >= 1");
  } else if (key == "step_budget") {
    s.step_budget = parse_uint(value, line, key);
    require_range(s.step_budget >= 1, key, value, "step_budget >= 1");
  } else if (key == "budget") {
    s.budget = parse_uint(value, line, key);
  } else if (key == "seed") {
    s.seed = parse_uint(value, line, key);
  } else if (key == "policy_seed") {
    s.policy_seed = parse_uint(value, line, key);
  } else if (key == "strict") {
    s.strict = parse_bool(value, line, key);
  } else if (key == "all_active") {
    s.all_active = parse_bool(value, line, key);
  } else if (key == "mode") {
    require_range(value == "kill" || value == "freeze", key, value,
                  "mode in {kill, freeze}");
    s.mode = value;
  } else if (key == "policy") {
    require_range(value == "leftmost" || value == "random" || value == "lifo",
                  key, value, "policy in {leftmost, random, lifo}");
    s.policy = value;
  } else if (key == "suites") {
    s.suites = value;
  } else if (key == "lambda_grid") {
    s.lambda_grid = parse_real_list(value, line, key);
    for (double l : s.lambda_grid)
      require_range(l > 0, key, fmt_real(l), "lambda > 0");
  } else if (key == "rho_grid") {
    s.rho_grid = parse_real_list(value, line, key);
    for (double r : s.rho_grid)
      require_range(r > 0 && r < 1, key, fmt_real(r), "rho in (0,1)");
  } else {
    fail(Errc::kInternal, "schema key without assignment: " + key);
  }
  (void)type;
}

std::string emit(const RunSpec& s, const std::string& key) {
  if (key == "lambda") return fmt_real(s.lambda);
  if (key == "rho") return fmt_real(s.rho);
  if (key == "density") return fmt_real(s.density);
  if (key == "delta") return fmt_real(s.delta);
  if (key == "gamma") return fmt_real(s.gamma);
  if (key == "rho_c_ref") return fmt_real(s.rho_c_ref);
  if (key == "n") return std::to_string(s.n);
  if (key == "k") return std::to_string(s.k);
  if (key == "max_stage") return std::to_string(s.max_stage);
  if (key == "trials") return std::to_string(s.trials);
  if (key == "step_budget") return std::to_string(s.step_budget);
  if (key == "budget") return std::to_string(s.budget);
  if (key == "seed") return std::to_string(s.seed);
  if (key == "policy_seed") return std::to_string(s.policy_seed);
  if (key == "strict") return s.strict ? "true" : "false";
  if (key == "all_active") return s.all_active ? "true" : "false";
  if (key == "mode") return s.mode;
  if (key == "policy") return s.policy;
  if (key == "suites") return s.suites;
  if (key == "lambda_grid") return fmt_real_list(s.lambda_grid);
  if (key == "rho_grid") return fmt_real_list(s.rho_grid);
  fail(Errc::kInternal, "schema key without emitter: " + key);
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kSimulate: return "simulate";
    case Command::kStabilize: return "stabilize";
    case Command::kProcedure: return "procedure";
    case Command::kFixation: return "fixation";
    case Command::kRhoc: return "rhoc";
    case Command::kTail: return "tail";
    case Command::kSweep: return "sweep";
    case Command::kVerify: return "verify";
  }
  fail(Errc::kInternal, "unhandled command name");
}

Command command_from_name(const std::string& name) {
  if (name == "simulate") return Command::kSimulate;
  if (name == "stabilize") return Command::kStabilize;
  if (name == "procedure") return Command::kProcedure;
  if (name == "fixation") return Command::kFixation;
  if (name == "rhoc") return Command::kRhoc;
  if (name == "tail") return Command::kTail;
  if (name == "sweep") return Command::kSweep;
  if (name == "verify") return Command::kVerify;
  fail(Errc::kParse, "unknown command '" + name + "'");
}

RunSpec parse_run_spec(const std::string& text) {
  struct Entry {
    std::string key, value;
    int line;
  };
  std::vector<Entry> entries;
  std::map<std::string, int> first_line;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      fail(Errc::kParse,
           "line " + std::to_string(line) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty())
      fail(Errc::kParse, "line " + std::to_string(line) + ": empty key");
    auto [it, inserted] = first_line.emplace(key, line);
    if (!inserted)
      fail(Errc::kDuplicateKey, "line " + std::to_string(line) +
                                    ": duplicate key '" + key +
                                    "' (first on line " +
                                    std::to_string(it->second) + ")");
    entries.push_back({key, value, line});
  }

  const Entry* cmd_entry = nullptr;
  for (const Entry& e : entries)
    if (e.key == "command") cmd_entry = &e;
  if (cmd_entry == nullptr)
    fail(Errc::kParse, "missing required key 'command'");

  RunSpec spec;
  spec.command = command_from_name(cmd_entry->value);
  const auto& schema = schema_for(spec.command);

  for (const Entry& e : entries) {
    if (e.key == "command") continue;
    const KeySpec* ks = nullptr;
    for (const KeySpec& k : schema)
      if (e.key == k.key) ks = &k;
    if (ks == nullptr)
      fail(Errc::kUnknownKey, "line " + std::to_string(e.line) +
                                  ": unknown key '" + e.key +
                                  "' for command '" +
                                  command_name(spec.command) + "'");
    assign(spec, e.key, ks->type, e.value, e.line);
    spec.present.insert(e.key);
  }

  for (const KeySpec& k : schema)
    if (k.required && !spec.has(k.key))
      fail(Errc::kParse, std::string("missing required key '") + k.key +
                             "' for command '" + command_name(spec.command) +
                             "'");

  if (spec.command == Command::kProcedure && !spec.strict) {
    if (!spec.has("k") || !spec.has("delta") || !spec.has("gamma"))
      fail(Errc::kParse,
           "command 'procedure' with strict = false requires explicit "
           "k, delta, gamma");
  }
  return spec;
}

std::string serialize_run_spec(const RunSpec& spec) {
  std::string out = "command = ";
  out += command_name(spec.command);
  out += '\n';
  for (const KeySpec& k : schema_for(spec.command)) {
    // k, delta, gamma stay unset when strict mode derives them; an unset
    // sentinel would not reparse, so canonical form omits it.
    std::string key = k.key;
    if ((key == "k" && spec.k == 0) || (key == "delta" && spec.delta == 0) ||
        (key == "gamma" && spec.gamma == 0))
      continue;
    out += key;
    out += " = ";
    out += emit(spec, key);
    out += '\n';
  }
  return out;
}

bool operator==(const RunSpec& a, const RunSpec& b) {
  return serialize_run_spec(a) == serialize_run_spec(b);
}

}  // namespace arw
