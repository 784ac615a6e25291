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

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "common/error.hpp"
#include "doctest.h"
#include "io/execute.hpp"
#include "io/records.hpp"
#include "io/runspec.hpp"
#include "json.hpp"
#include "verify/checks.hpp"

using namespace arw;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{0};
}

std::string error_text(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("arw_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("run spec defaults and canonical form") {
  CHECK(code_of([] { parse_run_spec("command = simulate\n"); }) == Errc::kParse);
  CHECK(code_of([] {
          parse_run_spec("command = simulate\nlambda = 1\n");
        }) == Errc::kParse);
  RunSpec s = parse_run_spec("command = simulate\nlambda = 1\nrho = 0.5\n");
  CHECK(s.command == Command::kSimulate);
  CHECK(s.lambda == 1.0);
  CHECK(s.rho == 0.5);
  // Optional keys fall back to documented defaults.
  CHECK(s.trials == 1);
  CHECK(s.step_budget == 100000);
  CHECK(s.seed == 0);
  std::string canon = serialize_run_spec(s);
  // Canonical text is idempotent under reparsing.
  CHECK(serialize_run_spec(parse_run_spec(canon)) == canon);
  CHECK(canon.find("command = simulate") != std::string::npos);
  CHECK(canon.find("lambda = 1") != std::string::npos);
}

TEST_CASE("run spec accepts comments and blank lines") {
  RunSpec s = parse_run_spec(
      "# fixation study\n"
      "\n"
      "command = fixation\n"
      "lambda = 0.5\n"
      "  rho=0.25\n"
      "trials = 500\n");
  CHECK(s.command == Command::kFixation);
  CHECK(s.lambda == 0.5);
  CHECK(s.rho == 0.25);
  CHECK(s.trials == 500);
  CHECK(s.has("lambda"));
  CHECK_FALSE(s.has("seed"));
}

TEST_CASE("run spec errors carry line numbers and codes") {
  CHECK(code_of([] { parse_run_spec("lambda = 1\n"); }) == Errc::kParse);
  CHECK(code_of([] { parse_run_spec("command = warp\n"); }) == Errc::kParse);
  CHECK(code_of([] {
          parse_run_spec("command = simulate\nwidgets = 3\n");
        }) == Errc::kUnknownKey);
  std::string dup = error_text([] {
    parse_run_spec("command = simulate\nlambda = 1\nlambda = 2\n");
  });
  CHECK(dup.find("line 3") != std::string::npos);
  CHECK(dup.find("first on line 2") != std::string::npos);
  CHECK(code_of([] {
          parse_run_spec("command = simulate\nlambda = 1\nlambda = 2\n");
        }) == Errc::kDuplicateKey);
  std::string dom = error_text([] {
    parse_run_spec("command = simulate\nrho = 1.5\n");
  });
  CHECK(dom.find("out of range") != std::string::npos);
  CHECK(dom.find("rho") != std::string::npos);
  CHECK(code_of([] {
          parse_run_spec("command = simulate\ntrials = abc\n");
        }) == Errc::kParse);
  CHECK(code_of([] {
          parse_run_spec("command = stabilize\nmode = evaporate\n");
        }) == Errc::kDomain);
}

TEST_CASE("keys are validated against the command schema") {
  // rho belongs to simulate but not to stabilize.
  CHECK_NOTHROW(parse_run_spec("command = simulate\nlambda = 1\nrho = 0.4\n"));
  CHECK(code_of([] {
          parse_run_spec("command = stabilize\nlambda = 1\nn = 10\nrho = 0.4\n");
        }) == Errc::kUnknownKey);
}

TEST_CASE("procedure spec demands explicit desk parameters") {
  // The trio is conditionally required, so its absence parses as missing
  // keys rather than a bad value.
  CHECK(code_of([] {
          parse_run_spec(
              "command = procedure\nlambda = 1\nrho = 0.6\n"
              "rho_c_ref = 0.3\nstrict = false\n");
        }) == Errc::kParse);
  RunSpec s = parse_run_spec(
      "command = procedure\nlambda = 1\nrho = 0.6\nrho_c_ref = 0.3\n"
      "strict = false\nk = 10\ndelta = 0.05\ngamma = 0.1\nmax_stage = 2\n");
  CHECK(s.k == 10);
  std::string canon = serialize_run_spec(s);
  CHECK(serialize_run_spec(parse_run_spec(canon)) == canon);

  // Strict mode derives the trio; its canonical form omits the unset keys.
  RunSpec strict = parse_run_spec(
      "command = procedure\nlambda = 1\nrho = 0.95\n"
      "rho_c_ref = 0.8\nstrict = true\n");
  std::string sc = serialize_run_spec(strict);
  CHECK(sc.find("\nk =") == std::string::npos);
  CHECK(sc.find("delta =") == std::string::npos);
  CHECK(serialize_run_spec(parse_run_spec(sc)) == sc);
}

TEST_CASE("spec equality follows the canonical form") {
  RunSpec a = parse_run_spec("command = simulate\nlambda = 1\nrho = 0.5\n");
  RunSpec b =
      parse_run_spec("command = simulate\n# note\nlambda = 1.0\nrho = 0.50\n");
  RunSpec c = parse_run_spec("command = simulate\nlambda = 2\nrho = 0.5\n");
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("sweep grids parse and reserialize") {
  RunSpec s = parse_run_spec(
      "command = sweep\nlambda_grid = 0.5, 1, 2\nrho_grid = 0.25,0.75\n");
  REQUIRE(s.lambda_grid.size() == 3);
  CHECK(s.lambda_grid[1] == 1.0);
  REQUIRE(s.rho_grid.size() == 2);
  std::string canon = serialize_run_spec(s);
  CHECK(canon.find("lambda_grid = 0.5,1,2") != std::string::npos);
  CHECK(code_of([] {
          parse_run_spec("command = sweep\nlambda_grid = 0.5,,1\n");
        }) == Errc::kParse);
  CHECK(code_of([] {
          parse_run_spec("command = sweep\nrho_grid = 0.5,1.5\n");
        }) == Errc::kDomain);
}

TEST_CASE("records format every field exactly once") {
  Record r;
  r.add("trial", std::uint64_t{7});
  r.add("value", 0.1);
  r.add("flag", true);
  r.add_text("note", "plain");
  r.add_big("mass", BigInt("123456789012345678901234567890"));
  REQUIRE(r.fields().size() == 5);
  CHECK(r.fields()[1].literal == "0.1");
  CHECK(r.fields()[2].literal == "true");
  CHECK(r.fields()[4].literal == "123456789012345678901234567890");
}

TEST_CASE("real formatting is stable and rejects non-finite values") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-2.5e-8) == "-2.5e-08");
  CHECK(code_of([] { format_real(std::nan("")); }) == Errc::kDomain);
  CHECK(code_of([] {
          format_real(std::numeric_limits<double>::infinity());
        }) == Errc::kDomain);
}

TEST_CASE("csv and jsonl writers share literals and escape properly") {
  Record a;
  a.add("id", 1);
  a.add_text("note", "with, comma and \"quote\"");
  a.add("x", 2.5);
  Record b;
  b.add("id", 2);
  b.add_text("note", "line\nbreak");
  b.add("x", -0.5);
  std::vector<Record> rows{a, b};

  std::string csv = to_csv(rows);
  CHECK(csv.find("id,note,x") == 0);
  CHECK(csv.find("\"with, comma and \"\"quote\"\"\"") != std::string::npos);
  CHECK(csv.find("\"line\nbreak\"") != std::string::npos);

  std::string jsonl = to_jsonl(rows);
  std::istringstream lines(jsonl);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.contains("id"));
    CHECK(j.contains("note"));
    CHECK(j.contains("x"));
    ++n;
  }
  CHECK(n == 2);

  // Ragged batches are a programming error.
  Record ragged;
  ragged.add("id", 3);
  std::vector<Record> bad{a, ragged};
  CHECK(code_of([&] { to_csv(bad); }) == Errc::kInternal);
  CHECK(code_of([&] { to_jsonl(bad); }) == Errc::kInternal);
}

TEST_CASE("big integers survive the json round trip") {
  Record r;
  r.add_big("odometer", BigInt("987654321098765432109876543210"));
  nlohmann::json j = nlohmann::json::parse(to_jsonl({r}));
  CHECK(j["odometer"].get<std::string>() == "987654321098765432109876543210");
}

TEST_CASE("executing a stabilize spec writes results and a manifest") {
  TempDir tmp("exec");
  RunSpec spec = parse_run_spec(
      "command = stabilize\nlambda = 1\nn = 40\ntrials = 3\nseed = 5\n");
  ExecutionResult r1 = execute_run(spec, (tmp.path / "a").string(), "csv", 1);
  CHECK(r1.ok);
  CHECK(std::filesystem::exists(r1.results_path));
  CHECK(std::filesystem::exists(r1.manifest_path));

  nlohmann::json manifest = nlohmann::json::parse(slurp(r1.manifest_path));
  CHECK(manifest["command"] == "stabilize");
  CHECK(manifest["format"] == "csv");
  CHECK(manifest["ok"] == true);
  CHECK(manifest["records"] == 3);
  CHECK(manifest["spec"].get<std::string>() == serialize_run_spec(spec));
  CHECK(manifest.contains("started"));
  CHECK(manifest.contains("finished"));

  // Reruns reproduce the results bytes; manifests differ only in timestamps.
  ExecutionResult r2 = execute_run(spec, (tmp.path / "b").string(), "csv", 1);
  CHECK(slurp(r1.results_path) == slurp(r2.results_path));
  nlohmann::json m2 = nlohmann::json::parse(slurp(r2.manifest_path));
  for (auto* m : {&manifest, &m2}) {
    m->erase("started");
    m->erase("finished");
  }
  CHECK(manifest == m2);

  CHECK(code_of([&] {
          execute_run(spec, (tmp.path / "c").string(), "parquet", 1);
        }) == Errc::kDomain);
}

TEST_CASE("json lines output parses row by row") {
  TempDir tmp("jsonl");
  RunSpec spec = parse_run_spec(
      "command = simulate\nlambda = 1\nrho = 0.4\ntrials = 4\n"
      "step_budget = 2000\nseed = 9\n");
  ExecutionResult r = execute_run(spec, tmp.path.string(), "json-lines", 1);
  CHECK(r.ok);
  std::istringstream lines(slurp(r.results_path));
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.contains("trial"));
    CHECK(j.contains("fixated"));
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("verify command surfaces suite failures in ok") {
  RunSpec spec = parse_run_spec(
      "command = verify\nsuites = conservation\ntrials = 200\nseed = 3\n");
  RunOutput out = run_spec(spec, 1);
  CHECK(out.ok);
  CHECK(!out.records.empty());
  CHECK(!out.summary.empty());
}

TEST_CASE("suite list parsing") {
  auto all = parse_suite_list("all");
  CHECK(all.size() == 5);
  auto two = parse_suite_list("abelian, bound");
  REQUIRE(two.size() == 2);
  CHECK(two[0] == "abelian");
  CHECK(two[1] == "bound");
  CHECK(code_of([] { parse_suite_list("abelian,warp"); }) == Errc::kDomain);
}

#ifdef ARW_CLI_PATH
namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(ARW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("cli exit codes follow the contract") {
  TempDir tmp("cli");
  std::filesystem::create_directories(tmp.path);
  auto spec_path = tmp.path / "good.spec";
  {
    std::ofstream out(spec_path);
    out << "command = stabilize\nlambda = 1\nn = 30\ntrials = 2\nseed = 1\n";
  }
  auto bad_path = tmp.path / "bad.spec";
  {
    std::ofstream out(bad_path);
    out << "command = stabilize\nwidgets = 1\n";
  }

  CHECK(run_cli("run --spec " + spec_path.string() + " --out " +
                (tmp.path / "out").string()) == 0);
  CHECK(run_cli("canon --spec " + spec_path.string()) == 0);
  CHECK(run_cli("run --spec " + bad_path.string() + " --out " +
                (tmp.path / "out2").string()) == 1);
  CHECK(run_cli("run --spec " + (tmp.path / "missing.spec").string() +
                " --out " + (tmp.path / "out3").string()) == 2);
  CHECK(run_cli("stabilize --config \"0 2 | 0 2 0 | 0 0\" --lambda 1 --seed 4") == 0);
  CHECK(run_cli("stabilize --config \"0 2 | 0 2\" --lambda 1") == 1);

  // Command-named subcommands insist that the file declares the same command.
  CHECK(run_cli("stabilize --spec " + spec_path.string() + " --out " +
                (tmp.path / "out4").string()) == 0);
  CHECK(run_cli("simulate --spec " + spec_path.string() + " --out " +
                (tmp.path / "out5").string()) == 1);
  auto fix_path = tmp.path / "fix.spec";
  {
    std::ofstream out(fix_path);
    out << "command = fixation\nlambda = 1\nrho = 0.5\ntrials = 50\n"
           "step_budget = 2000\nseed = 9\n";
  }
  CHECK(run_cli("fixation --spec " + fix_path.string() + " --out " +
                (tmp.path / "out6").string()) == 0);
  CHECK(run_cli("stabilize") == 1);
}
#endif

#ifdef ARW_SPECS_DIR
TEST_CASE("shipped sample specs parse and canonicalize") {
  std::size_t seen = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(ARW_SPECS_DIR)) {
    if (entry.path().extension() != ".spec") continue;
    ++seen;
    std::ifstream in(entry.path());
    std::ostringstream text;
    text << in.rdbuf();
    RunSpec s = parse_run_spec(text.str());
    std::string canon = serialize_run_spec(s);
    CHECK(serialize_run_spec(parse_run_spec(canon)) == canon);
  }
  CHECK(seen == 8);
}
#endif
