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

#include <array>
#include <cstdio>
#include <cstring>
#include <string>

#include <CLI11.hpp>

#include "arw/arw.h"

namespace {

// 0 ok, 1 bad spec or argument, 2 io or internal, 3 verification failure.
int exit_code(arw_status s) {
  switch (s) {
    case ARW_OK:
      return 0;
    case ARW_E_DOMAIN:
    case ARW_E_PARSE:
    case ARW_E_UNKNOWN_KEY:
    case ARW_E_DUPLICATE_KEY:
      return 1;
    case ARW_E_VERIFY_FAILED:
      return 3;
    default:
      return 2;
  }
}

int report(arw_status s) {
  if (s != ARW_OK) std::fprintf(stderr, "error: %s\n", arw_last_error());
  return exit_code(s);
}

// Canonical text always opens with "command = <name>".
std::string spec_command(arw_spec* spec) {
  char* text = nullptr;
  if (arw_spec_canonical(spec, &text) != ARW_OK) return "";
  std::string head(text);
  arw_free(text);
  std::size_t eol = head.find('\n');
  if (eol != std::string::npos) head.resize(eol);
  const std::string prefix = "command = ";
  if (head.rfind(prefix, 0) != 0) return "";
  return head.substr(prefix.size());
}

int execute_spec_file(const std::string& spec_path, const std::string& out_dir,
                      const std::string& format, unsigned threads,
                      const char* expect_command) {
  arw_spec* spec = nullptr;
  arw_status s = arw_spec_read(spec_path.c_str(), &spec);
  if (s != ARW_OK) return report(s);
  if (expect_command != nullptr) {
    std::string actual = spec_command(spec);
    if (actual != expect_command) {
      std::fprintf(stderr,
                   "error: spec file declares command '%s' but the '%s' "
                   "subcommand was invoked\n",
                   actual.c_str(), expect_command);
      arw_spec_free(spec);
      return 1;
    }
  }
  char* summary = nullptr;
  s = arw_execute(spec, out_dir.c_str(), format.c_str(), threads, &summary);
  if (summary != nullptr) {
    std::fputs(summary, stdout);
    arw_free(summary);
  }
  arw_spec_free(spec);
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"activated random walk toolkit"};
  app.set_version_flag("--version", arw_version());
  app.require_subcommand(1);

  std::string spec_path, out_dir = "out", format = "csv";
  unsigned threads = 1;
  auto add_exec_options = [&](CLI::App* sub, bool spec_required) {
    CLI::Option* opt =
        sub->add_option("--spec", spec_path, "spec file (key = value lines)");
    if (spec_required) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    sub->add_option("--threads", threads, "worker threads (0 = all cores)")
        ->envname("ARW_THREADS");
    return opt;
  };

  CLI::App* run = app.add_subcommand("run", "execute a run spec");
  add_exec_options(run, true);

  // One subcommand per spec command, so `arw <command> --spec <file>` works
  // without repeating the command inside the invocation and the file.
  static const std::array<const char*, 7> kSpecCommands = {
      "simulate", "procedure", "fixation", "rhoc", "tail", "sweep", "verify"};
  std::array<CLI::App*, kSpecCommands.size()> named{};
  for (std::size_t i = 0; i < kSpecCommands.size(); ++i) {
    named[i] = app.add_subcommand(
        kSpecCommands[i],
        std::string("execute a '") + kSpecCommands[i] + "' run spec");
    add_exec_options(named[i], true);
  }

  CLI::App* canon = app.add_subcommand("canon", "print a spec in canonical form");
  canon->add_option("--spec", spec_path, "spec file")->required();

  // `stabilize` doubles as the one-off tool: either a spec file or a literal
  // configuration on the command line.
  std::string config_text, mode = "kill", policy = "lifo";
  unsigned long long seed = 0, policy_seed = 0, budget = 0;
  double lambda = 1.0;
  CLI::App* stab = app.add_subcommand("stabilize", "stabilize one configuration");
  CLI::Option* stab_spec = add_exec_options(stab, false);
  CLI::Option* stab_config =
      stab->add_option("--config", config_text,
                       "canonical text, e.g. \"0 4 | 1 0 2 0 s | 0 0\"");
  stab_config->excludes(stab_spec);
  stab->add_option("--lambda", lambda, "sleep rate");
  stab->add_option("--seed", seed, "instruction oracle seed");
  stab->add_option("--mode", mode, "kill or freeze")
      ->check(CLI::IsMember({"kill", "freeze"}));
  stab->add_option("--policy", policy, "leftmost, random, or lifo")
      ->check(CLI::IsMember({"leftmost", "random", "lifo"}));
  stab->add_option("--policy-seed", policy_seed, "seed for the random policy");
  stab->add_option("--budget", budget, "max topplings (0 = unlimited)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return execute_spec_file(spec_path, out_dir, format, threads, nullptr);

  for (std::size_t i = 0; i < kSpecCommands.size(); ++i)
    if (named[i]->parsed())
      return execute_spec_file(spec_path, out_dir, format, threads,
                               kSpecCommands[i]);

  if (canon->parsed()) {
    arw_spec* spec = nullptr;
    arw_status s = arw_spec_read(spec_path.c_str(), &spec);
    if (s != ARW_OK) return report(s);
    char* text = nullptr;
    s = arw_spec_canonical(spec, &text);
    if (s == ARW_OK) {
      std::fputs(text, stdout);
      arw_free(text);
    }
    arw_spec_free(spec);
    return report(s);
  }

  if (!spec_path.empty())
    return execute_spec_file(spec_path, out_dir, format, threads, "stabilize");
  if (config_text.empty()) {
    std::fprintf(stderr, "error: stabilize needs --config or --spec\n");
    return 1;
  }

  arw_config* config = nullptr;
  arw_status s = arw_config_parse(config_text.c_str(), &config);
  if (s != ARW_OK) return report(s);
  arw_config* final_config = nullptr;
  char* topplings = nullptr;
  int exhausted = 0;
  s = arw_stabilize(config, seed, lambda, mode.c_str(), policy.c_str(),
                    policy_seed, budget, &final_config, &topplings, &exhausted);
  if (s == ARW_OK) {
    char* text = nullptr;
    s = arw_config_text(final_config, &text);
    if (s == ARW_OK) {
      std::printf("final      %s\n", text);
      std::printf("topplings  %s\n", topplings);
      if (exhausted) std::printf("budget exhausted before stability\n");
      arw_free(text);
    }
  }
  arw_free(topplings);
  arw_config_free(final_config);
  arw_config_free(config);
  return report(s);
}
