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

#include "io/execute.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "common/error.hpp"
#include "common/prf.hpp"
#include "common/version.hpp"
#include "core/stabilize.hpp"
#include "dynamics/environment.hpp"
#include "dynamics/jump_chain.hpp"
#include "estimators/fixation.hpp"
#include "estimators/sleeping.hpp"
#include "procedure/params.hpp"
#include "procedure/stage.hpp"
#include "verify/checks.hpp"

namespace arw {
namespace {

// Tags 1..3 match the fixation estimator, so simulate rows with the same
// seed replay the exact trials behind a fixation estimate.
enum : std::uint64_t { kEnvSeed = 1, kOracleSeed = 2, kTrialSeed = 3 };
enum : std::uint64_t { kProcOracle = 71, kProcEnv = 72 };

std::string fixation_line(const char* label, const Estimate& e) {
  std::string s = std::string(label) + " = " + format_real(e.point) + " [" +
                  format_real(e.ci_lo) + ", " + format_real(e.ci_hi) + "]";
  if (e.censored > 0)
    s += " (" + std::to_string(e.censored) + " censored, bracket [" +
         format_real(e.censored_low) + ", " + format_real(e.censored_high) +
         "])";
  return s;
}

void add_estimate(Record& r, const char* prefix, const Estimate& e) {
  std::string p(prefix);
  r.add(p + "point", e.point);
  r.add(p + "ci_lo", e.ci_lo);
  r.add(p + "ci_hi", e.ci_hi);
  r.add(p + "trials", e.trials);
  r.add(p + "successes", e.successes);
  r.add(p + "censored", e.censored);
  r.add(p + "censored_low", e.censored_low);
  r.add(p + "censored_high", e.censored_high);
}

RunOutput run_simulate(const RunSpec& spec, unsigned threads) {
  (void)threads;  // rows are ordered by trial; the loop itself is cheap
  RunOutput out;
  std::uint64_t fixated = 0;
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    InstructionOracle oracle{prf::derive_seed(spec.seed, kOracleSeed, t),
                             spec.lambda};
    EnvironmentSampler env{prf::derive_seed(spec.seed, kEnvSeed, t), spec.rho};
    std::uint64_t trial_seed = prf::derive_seed(spec.seed, kTrialSeed, t);
    JumpChain jc = JumpChain::grow(oracle, env, trial_seed);
    RunOutcome res = jc.run_until(spec.step_budget);
    bool fix = res.kind == OutcomeKind::kFixated;
    if (fix) ++fixated;

    Record r;
    r.add("trial", t);
    r.add("fixated", fix);
    r.add("steps", res.steps);
    r.add("clock", res.clock);
    r.add("window_lo", res.final_config.region().lo);
    r.add("window_hi", res.final_config.region().hi);
    r.add("site_mass", res.final_config.site_mass());
    r.add("sleeping_sites", res.final_config.sleeping_sites());
    out.records.push_back(std::move(r));
  }
  out.summary.push_back("fixated " + std::to_string(fixated) + " / " +
                        std::to_string(spec.trials) + " trials");
  return out;
}

RunOutput run_stabilize(const RunSpec& spec, unsigned threads) {
  (void)threads;
  RunOutput out;
  SleepingSpec sl;
  sl.lambda = spec.lambda;
  sl.n = static_cast<std::uint64_t>(spec.n);
  sl.density = spec.density;
  sl.all_active = spec.all_active;
  sl.trials = spec.trials;
  sl.seed = spec.seed;
  sl.budget = spec.budget;

  std::uint64_t total_sleepers = 0, decided = 0;
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    Configuration init = initial_placement(sl, t);
    InstructionOracle oracle = trial_oracle(sl, t);
    StabilizeOptions opt;
    opt.target = init.region();
    opt.mode = spec.mode == "freeze" ? BoundaryMode::kFreeze : BoundaryMode::kKill;
    opt.policy = policy_from_name(spec.policy, spec.policy_seed);
    if (spec.budget > 0) opt.budget = spec.budget;
    StabilizationResult res = stabilize(init, oracle, opt);
    if (!res.exhausted) {
      ++decided;
      total_sleepers += res.config.sleeping_sites();
    }

    Record r;
    r.add("trial", t);
    r.add("exhausted", res.exhausted);
    r.add("sleeping_sites", res.config.sleeping_sites());
    r.add("site_mass", res.config.site_mass());
    r.add("exited_left", res.config.exited_left());
    r.add("exited_right", res.config.exited_right());
    r.add("frozen_left", res.frozen_left);
    r.add("frozen_right", res.frozen_right);
    r.add_big("topplings", res.topplings);
    r.add_text("final", spec.n <= 64 ? to_text(res.config) : std::string());
    out.records.push_back(std::move(r));
  }
  if (decided > 0)
    out.summary.push_back(
        "mean sleeping fraction = " +
        format_real(static_cast<double>(total_sleepers) /
                    (static_cast<double>(decided) * static_cast<double>(spec.n))));
  if (decided < spec.trials)
    out.summary.push_back(std::to_string(spec.trials - decided) +
                          " trials hit the toppling budget");
  return out;
}

RunOutput run_procedure(const RunSpec& spec, unsigned threads) {
  (void)threads;
  RunOutput out;
  ProcedureParams params =
      choose_parameters(spec.rho, spec.rho_c_ref, spec.strict,
                        spec.has("k") ? std::optional<std::int64_t>(spec.k)
                                      : std::nullopt,
                        spec.has("delta") ? std::optional<double>(spec.delta)
                                          : std::nullopt,
                        spec.has("gamma") ? std::optional<double>(spec.gamma)
                                          : std::nullopt);
  std::uint64_t budget = spec.budget == 0
                             ? std::numeric_limits<std::uint64_t>::max()
                             : spec.budget;
  std::uint64_t good_stages = 0, total_stages = 0;
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    InstructionOracle oracle{prf::derive_seed(spec.seed, kProcOracle, t),
                             spec.lambda};
    EnvironmentSampler env{prf::derive_seed(spec.seed, kProcEnv, t), spec.rho};
    InductiveRun run = run_inductive(params, oracle, env,
                                     static_cast<unsigned>(spec.max_stage),
                                     budget);
    for (const StageReport& st : run.stages) {
      ++total_stages;
      if (st.good.good) ++good_stages;
      Record r;
      r.add("trial", t);
      r.add("stage", std::uint64_t{st.n});
      r.add("radius", params.pow_k(st.n + 1));
      r.add("initial_mass", st.initial.site_mass());
      r.add("final_mass", st.final_config.site_mass());
      r.add_big("odometer_sum", st.odometer_sum);
      r.add("frozen_left", st.frozen_left);
      r.add("frozen_right", st.frozen_right);
      r.add("exhausted", st.exhausted);
      r.add("good", st.good.good);
      r.add("c1_ok", st.good.c1_ok);
      r.add("c2_ok", st.good.c2_ok);
      r.add("d1", st.flags.d1);
      r.add("d2", st.flags.d2);
      r.add("d3", st.flags.d3);
      r.add("d4", st.flags.d4);
      r.add("f1", st.flags.f1);
      r.add("f2", st.flags.f2);
      r.add("f3", st.flags.f3);
      r.add_text("z_left", st.flags.z_left
                               ? std::to_string(*st.flags.z_left)
                               : std::string());
      r.add_text("z_right", st.flags.z_right
                                ? std::to_string(*st.flags.z_right)
                                : std::string());
      r.add("halted_no_frozen",
            run.halted_no_frozen && st.n == run.stages.back().n);
      out.records.push_back(std::move(r));
    }
  }
  out.summary.push_back("k = " + std::to_string(params.k) +
                        ", delta = " + format_real(params.delta) +
                        ", gamma = 1/" + std::to_string(params.gamma_inv));
  out.summary.push_back(std::to_string(good_stages) + " / " +
                        std::to_string(total_stages) + " stages good");
  return out;
}

RunOutput run_fixation(const RunSpec& spec, unsigned threads) {
  RunOutput out;
  FixationSpec fx;
  fx.lambda = spec.lambda;
  fx.rho = spec.rho;
  fx.trials = spec.trials;
  fx.step_budget = spec.step_budget;
  fx.seed = spec.seed;
  fx.threads = threads;
  FixationResult res = fixation_probability(fx);

  Record r;
  r.add("lambda", spec.lambda);
  r.add("rho", spec.rho);
  r.add("lower_bound", lower_bound(spec.lambda));
  add_estimate(r, "fixation_", res.overall);
  add_estimate(r, "first_step_", res.immediate);
  out.records.push_back(std::move(r));
  out.summary.push_back(fixation_line("fixation probability", res.overall));
  out.summary.push_back(fixation_line("first-step rate", res.immediate));
  return out;
}

RunOutput run_rhoc(const RunSpec& spec, unsigned threads) {
  RunOutput out;
  SleepingSpec sl;
  sl.lambda = spec.lambda;
  sl.n = static_cast<std::uint64_t>(spec.n);
  sl.density = 1.0;
  sl.all_active = true;
  sl.trials = spec.trials;
  sl.seed = spec.seed;
  sl.budget = spec.budget;
  sl.threads = threads;
  Estimate e = sleeping_fraction(sl);

  Record r;
  r.add("lambda", spec.lambda);
  r.add("n", spec.n);
  add_estimate(r, "rho_hat_", e);
  out.records.push_back(std::move(r));
  out.summary.push_back(fixation_line("sleeping density", e));
  return out;
}

RunOutput run_tail(const RunSpec& spec, unsigned threads) {
  RunOutput out;
  Estimate e =
      tail_probability(spec.lambda, static_cast<std::uint64_t>(spec.n),
                       spec.delta, spec.rho_c_ref, spec.trials, spec.seed,
                       threads);
  Record r;
  r.add("lambda", spec.lambda);
  r.add("n", spec.n);
  r.add("delta", spec.delta);
  r.add("rho_c_ref", spec.rho_c_ref);
  r.add("threshold",
        (spec.rho_c_ref + spec.delta) * static_cast<double>(spec.n));
  add_estimate(r, "tail_", e);
  out.records.push_back(std::move(r));
  out.summary.push_back(fixation_line("tail probability", e));
  return out;
}

RunOutput run_sweep(const RunSpec& spec, unsigned threads) {
  RunOutput out;
  std::vector<SweepCell> cells =
      sweep_fixation(spec.lambda_grid, spec.rho_grid, spec.trials,
                     spec.step_budget, spec.seed, threads);
  for (const SweepCell& cell : cells) {
    Record r;
    r.add("lambda", cell.lambda);
    r.add("rho", cell.rho);
    r.add("cell_seed", cell.cell_seed);
    r.add("lower_bound", lower_bound(cell.lambda));
    add_estimate(r, "fixation_", cell.result.overall);
    add_estimate(r, "first_step_", cell.result.immediate);
    out.records.push_back(std::move(r));
  }
  out.summary.push_back(std::to_string(cells.size()) + " grid cells");
  return out;
}

RunOutput run_verify(const RunSpec& spec, unsigned threads) {
  RunOutput out;
  VerifyScale sc;
  sc.threads = threads;
  if (spec.has("trials")) {
    sc.mc_trials = spec.trials;
    sc.grid_trials = spec.trials;
  }
  std::vector<SuiteResult> suites =
      run_verify_suites(spec.suites, spec.seed, sc);
  for (const SuiteResult& s : suites) {
    if (!s.passed()) out.ok = false;
    Record r;
    r.add_text("suite", s.name);
    r.add("cases", s.cases);
    r.add("failures", s.failures);
    r.add("passed", s.passed());
    out.records.push_back(std::move(r));
    std::string line = s.name + ": " + std::to_string(s.cases - s.failures) +
                       " / " + std::to_string(s.cases) + " cases";
    out.summary.push_back(line);
    for (const std::string& n : s.notes) out.summary.push_back("  " + n);
  }
  return out;
}

std::string iso_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::kIo, "cannot open " + path.string() + " for writing");
  f << body;
  f.flush();
  if (!f) fail(Errc::kIo, "short write to " + path.string());
}

}  // namespace

RunOutput run_spec(const RunSpec& spec, unsigned threads) {
  switch (spec.command) {
    case Command::kSimulate: return run_simulate(spec, threads);
    case Command::kStabilize: return run_stabilize(spec, threads);
    case Command::kProcedure: return run_procedure(spec, threads);
    case Command::kFixation: return run_fixation(spec, threads);
    case Command::kRhoc: return run_rhoc(spec, threads);
    case Command::kTail: return run_tail(spec, threads);
    case Command::kSweep: return run_sweep(spec, threads);
    case Command::kVerify: return run_verify(spec, threads);
  }
  fail(Errc::kInternal, "unhandled command");
}

ExecutionResult execute_run(const RunSpec& spec, const std::string& out_dir,
                            const std::string& format, unsigned threads) {
  if (format != "csv" && format != "json-lines")
    fail(Errc::kDomain, "format = " + format +
                            " out of range: format in {csv, json-lines}");
  std::string started = iso_now();
  RunOutput out = run_spec(spec, threads);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(Errc::kIo, "cannot create " + out_dir + ": " + ec.message());

  std::filesystem::path dir(out_dir);
  std::filesystem::path results =
      dir / (format == "csv" ? "results.csv" : "results.jsonl");
  write_file(results,
             format == "csv" ? to_csv(out.records) : to_jsonl(out.records));

  nlohmann::ordered_json manifest;
  manifest["artifact"] = "arw";
  manifest["version"] = kVersionString;
  manifest["command"] = command_name(spec.command);
  manifest["format"] = format;
  manifest["threads"] = threads;
  manifest["spec"] = serialize_run_spec(spec);
  manifest["results"] = results.filename().string();
  manifest["records"] = out.records.size();
  manifest["ok"] = out.ok;
  manifest["summary"] = out.summary;
  // The two timestamps are the only fields allowed to differ between
  // reruns of the same spec.
  manifest["started"] = started;
  manifest["finished"] = iso_now();

  std::filesystem::path manifest_path = dir / "manifest.json";
  write_file(manifest_path, manifest.dump(2) + "\n");

  ExecutionResult res;
  res.ok = out.ok;
  res.results_path = results.string();
  res.manifest_path = manifest_path.string();
  res.summary = std::move(out.summary);
  return res;
}

}  // namespace arw
