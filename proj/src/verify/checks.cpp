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

#include "verify/checks.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include "common/error.hpp"
#include "common/prf.hpp"
#include "core/ops.hpp"
#include "core/oracle.hpp"
#include "core/stabilize.hpp"
#include "core/types.hpp"
#include "dynamics/absorption.hpp"
#include "dynamics/jump_chain.hpp"
#include "estimators/estimate.hpp"
#include "estimators/fixation.hpp"

namespace arw {
namespace {

// Scratch generator for building test instances; determinism is all that
// matters here, so the modulo bias on tiny ranges is irrelevant.
class Rng {
 public:
  explicit Rng(std::uint64_t s) : base_(prf::mix64(s + 0x632be59bd9b4e019ull)) {}
  std::uint64_t u64() { return prf::draw_u64(base_, ++i_); }
  std::uint64_t below(std::uint64_t n) { return u64() % n; }

 private:
  std::uint64_t base_;
  std::uint64_t i_ = 0;
};

double pick_lambda(Rng& rng) {
  static const double lams[] = {0.5, 1.0, 2.0};
  return lams[rng.below(3)];
}

Configuration random_instance(Rng& rng) {
  std::int64_t w = 3 + static_cast<std::int64_t>(rng.below(5));
  Configuration c(Region{0, w - 1});
  std::uint64_t m = 1 + rng.below(6);
  for (std::uint64_t p = 0; p < m; ++p) {
    std::int64_t x = static_cast<std::int64_t>(rng.below(w));
    SiteState& s = c.at(x);
    if (s.sleeping) {
      s = SiteState{2, false};  // an arrival wakes the sleeper
    } else if (s.count == 0 && rng.below(2) == 0) {
      s = SiteState{1, true};
    } else {
      ++s.count;
    }
  }
  return c;
}

void note(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.notes.size() < 8) r.notes.push_back(msg);
}

}  // namespace

SuiteResult check_abelian(std::uint64_t seed, const VerifyScale& sc) {
  SuiteResult res{"abelian", 0, 0, {}};
  for (std::uint64_t i = 0; i < sc.instances; ++i) {
    Rng rng(prf::derive_seed(seed, 11, i));
    Configuration c = random_instance(rng);
    InstructionOracle oracle{prf::derive_seed(seed, 12, i), pick_lambda(rng)};

    StabilizeOptions opt;
    opt.target = c.region();
    opt.mode = BoundaryMode::kKill;
    opt.policy = Policy::leftmost();
    StabilizationResult ref = stabilize(c, oracle, opt);
    std::string want = to_text(ref.config);

    for (std::uint64_t o = 0; o < sc.orders; ++o) {
      ++res.cases;
      Configuration work = c;
      std::vector<std::uint64_t> remaining, applied;
      std::uint64_t total = 0;
      for (std::int64_t x = c.region().lo; x <= c.region().hi; ++x) {
        remaining.push_back(ref.odometer.at(x));
        applied.push_back(0);
        total += ref.odometer.at(x);
      }
      bool stuck = false;
      while (total > 0) {
        std::vector<std::int64_t> ready;
        for (std::int64_t x = c.region().lo; x <= c.region().hi; ++x)
          if (!is_stable(work, x) && remaining[x - c.region().lo] > 0)
            ready.push_back(x);
        if (ready.empty()) {
          stuck = true;
          break;
        }
        std::int64_t x = ready[rng.below(ready.size())];
        std::size_t ix = static_cast<std::size_t>(x - c.region().lo);
        Instruction ins = instruction_at(oracle, x, applied[ix] + 1);
        work = apply_instruction(work, x, ins, BoundaryMode::kKill);
        ++applied[ix];
        --remaining[ix];
        --total;
      }
      if (stuck) {
        note(res, "instance " + std::to_string(i) + " order " +
                      std::to_string(o) +
                      ": replay stuck before consuming all multiplicities");
        continue;
      }
      if (to_text(work) != want)
        note(res, "instance " + std::to_string(i) + " order " +
                      std::to_string(o) + ": final configuration differs");
    }
  }
  return res;
}

SuiteResult check_uniqueness(std::uint64_t seed, const VerifyScale& sc) {
  SuiteResult res{"uniqueness", 0, 0, {}};
  for (std::uint64_t i = 0; i < sc.instances; ++i) {
    Rng rng(prf::derive_seed(seed, 21, i));
    Configuration c = random_instance(rng);
    InstructionOracle oracle{prf::derive_seed(seed, 22, i), pick_lambda(rng)};
    BoundaryMode mode = rng.below(2) ? BoundaryMode::kKill : BoundaryMode::kFreeze;

    StabilizeOptions opt;
    opt.target = c.region();
    opt.mode = mode;
    opt.policy = Policy::leftmost();
    StabilizationResult ref = stabilize(c, oracle, opt);
    std::string want = to_text(ref.config);

    std::vector<Policy> rivals = {Policy::lifo()};
    for (std::uint64_t s = 0; s < 5; ++s)
      rivals.push_back(Policy::random(prf::derive_seed(seed, 23, i * 8 + s)));

    for (std::size_t p = 0; p < rivals.size(); ++p) {
      ++res.cases;
      opt.policy = rivals[p];
      StabilizationResult got = stabilize(c, oracle, opt);
      if (to_text(got.config) != want)
        note(res, "instance " + std::to_string(i) + " policy " +
                      std::to_string(p) + ": final configuration differs");
      else if (!(got.odometer == ref.odometer))
        note(res, "instance " + std::to_string(i) + " policy " +
                      std::to_string(p) + ": odometer differs");
      else if (got.topplings != ref.topplings)
        note(res, "instance " + std::to_string(i) + " policy " +
                      std::to_string(p) + ": toppling count differs");
    }
  }
  return res;
}

SuiteResult check_conservation(std::uint64_t seed, const VerifyScale& sc) {
  SuiteResult res{"conservation", 0, 0, {}};
  for (std::uint64_t i = 0; i < sc.instances; ++i) {
    Rng rng(prf::derive_seed(seed, 31, i));
    Configuration c = random_instance(rng);
    InstructionOracle oracle{prf::derive_seed(seed, 32, i), pick_lambda(rng)};
    std::uint64_t mass0 = c.site_mass();

    for (BoundaryMode mode : {BoundaryMode::kKill, BoundaryMode::kFreeze}) {
      ++res.cases;
      StabilizeOptions opt;
      opt.target = c.region();
      opt.mode = mode;
      StabilizationResult r = stabilize(c, oracle, opt);
      const Configuration& f = r.config;

      if (f.site_mass() + f.exited_left() + f.exited_right() != mass0) {
        note(res, "instance " + std::to_string(i) + ": mass not conserved");
        continue;
      }
      std::int64_t lo = f.region().lo, hi = f.region().hi;
      std::int64_t check_lo = mode == BoundaryMode::kFreeze ? lo + 1 : lo;
      std::int64_t check_hi = mode == BoundaryMode::kFreeze ? hi - 1 : hi;
      bool stable_ok = true;
      for (std::int64_t x = check_lo; x <= check_hi; ++x)
        stable_ok = stable_ok && is_stable(f, x);
      if (!stable_ok) {
        note(res, "instance " + std::to_string(i) + ": unstable site remains");
        continue;
      }
      if (mode == BoundaryMode::kFreeze &&
          (f.exited_left() != 0 || f.exited_right() != 0 ||
           r.odometer.at(lo) != 0 || r.odometer.at(hi) != 0)) {
        note(res, "instance " + std::to_string(i) +
                      ": frozen boundary leaked or toppled");
        continue;
      }
      if (!(configuration_from_text(to_text(f)) == f))
        note(res, "instance " + std::to_string(i) +
                      ": canonical text does not round-trip");
    }
  }
  return res;
}

SuiteResult check_oracle_agreement(std::uint64_t seed, const VerifyScale& sc) {
  SuiteResult res{"oracle", 0, 0, {}};
  struct Entry {
    const char* text;
    double lambda;
  };
  // Canonical-text catalog; at most 3 particles on width <= 5 so the exact
  // solve stays small. Spans both boundary-heavy and interior starts.
  static const Entry catalog[] = {
      {"0 0 | 1 | 0 0", 1.0},          {"0 0 | 2 | 0 0", 1.0},
      {"0 0 | 1 | 0 0", 0.5},          {"0 0 | 2 | 0 0", 2.0},
      {"0 1 | 1 0 | 0 0", 1.0},        {"0 1 | 1 1 | 0 0", 1.0},
      {"0 1 | 2 0 | 0 0", 0.5},        {"0 1 | s 1 | 0 0", 1.0},
      {"0 2 | 1 0 0 | 0 0", 1.0},      {"0 2 | 0 1 0 | 0 0", 0.5},
      {"0 2 | 1 0 1 | 0 0", 1.0},      {"0 2 | 0 2 0 | 0 0", 2.0},
      {"0 2 | s 1 0 | 0 0", 1.0},      {"0 2 | 1 1 1 | 0 0", 1.0},
      {"0 3 | 0 1 0 0 | 0 0", 1.0},    {"0 3 | 1 0 0 1 | 0 0", 0.5},
      {"0 3 | 0 2 0 0 | 0 0", 1.0},    {"0 3 | s 0 1 s | 0 0", 1.0},
      {"0 4 | 0 0 1 0 0 | 0 0", 1.0},  {"0 4 | 0 0 2 0 0 | 0 0", 1.0},
      {"0 4 | 1 0 1 0 1 | 0 0", 0.5},  {"0 4 | 0 s 1 s 0 | 0 0", 1.0},
      {"0 4 | 0 0 3 0 0 | 0 0", 2.0},  {"0 4 | 2 0 0 0 1 | 0 0", 1.0},
      {"0 4 | 0 1 s 1 0 | 0 0", 1.0},
  };

  for (std::size_t e = 0; e < std::size(catalog); ++e) {
    Configuration c = configuration_from_text(catalog[e].text);
    double lam = catalog[e].lambda;
    AbsorptionResult exact = absorption_oracle(c, lam);
    std::map<std::string, double> want;
    for (const auto& [text, prob] : exact.distribution)
      want[text] = static_cast<double>(prob);

    std::map<std::string, std::uint64_t> chain_hits, drive_hits;
    std::uint64_t censored = 0;
    for (std::uint64_t t = 0; t < sc.mc_trials; ++t) {
      InstructionOracle oracle{prf::derive_seed(seed, 41 + e, 2 * t), lam};
      JumpChain jc =
          JumpChain::kill(oracle, c, prf::derive_seed(seed, 41 + e, 2 * t + 1));
      RunOutcome out = jc.run_until(100000);
      if (out.kind != OutcomeKind::kFixated) {
        ++censored;
        continue;
      }
      ++chain_hits[to_text(out.final_config)];

      StabilizeOptions opt;
      opt.target = c.region();
      opt.mode = BoundaryMode::kKill;
      opt.policy = Policy::random(prf::derive_seed(seed, 141 + e, t));
      ++drive_hits[to_text(stabilize(c, oracle, opt).config)];
    }

    auto tv_of = [&](const std::map<std::string, std::uint64_t>& hits) {
      std::map<std::string, double> got;
      for (const auto& [text, n] : hits)
        got[text] = static_cast<double>(n) / static_cast<double>(sc.mc_trials);
      return tv_distance(want, got);
    };
    // Empirical TV noise scales like 1 / sqrt(trials); 0.02 is the bound at
    // 10^5 trials, kept at the same multiple of typical noise elsewhere.
    double tol = 0.02 * std::sqrt(100000.0 / static_cast<double>(sc.mc_trials));
    ++res.cases;
    if (censored != 0)
      note(res, "entry " + std::to_string(e) + ": " + std::to_string(censored) +
                    " trials failed to absorb");
    else if (double tv = tv_of(chain_hits); tv > tol)
      note(res, "entry " + std::to_string(e) + ": jump chain TV " +
                    std::to_string(tv));
    ++res.cases;
    if (censored != 0)
      note(res, "entry " + std::to_string(e) + ": stabilization tally short");
    else if (double tv = tv_of(drive_hits); tv > tol)
      note(res, "entry " + std::to_string(e) + ": stabilization TV " +
                    std::to_string(tv));
  }

  // Closed form: two active particles on one site, lambda = 1, must leave a
  // sleeper behind with probability exactly 1/2.
  ++res.cases;
  AbsorptionResult two = absorption_oracle(
      configuration_from_text("0 0 | 2 | 0 0"), 1.0);
  if (two.prob_any_sleeping != BigRat(1, 2))
    note(res, "two-particle closed form: expected 1/2");
  return res;
}

SuiteResult check_lower_bound(std::uint64_t seed, const VerifyScale& sc) {
  SuiteResult res{"bound", 0, 0, {}};
  static const double lams[] = {0.5, 1.0, 2.0};
  static const double rhos[] = {0.5, 0.9};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      FixationSpec spec;
      spec.lambda = lams[a];
      spec.rho = rhos[b];
      spec.trials = sc.grid_trials;
      spec.step_budget = sc.step_budget;
      spec.seed = prf::derive_seed(seed, 51, a * 8 + b);
      spec.threads = sc.threads;
      FixationResult r = fixation_probability(spec);

      double floor = lower_bound(spec.lambda);
      double half_width = 0.5 * (r.overall.ci_hi - r.overall.ci_lo);
      ++res.cases;
      if (r.overall.point < floor - 3.0 * half_width)
        note(res, "lambda " + std::to_string(spec.lambda) + " rho " +
                      std::to_string(spec.rho) + ": fixation " +
                      std::to_string(r.overall.point) +
                      " below lower bound " + std::to_string(floor));
      double sigma =
          std::sqrt(floor * (1.0 - floor) / static_cast<double>(spec.trials));
      ++res.cases;
      if (std::abs(r.immediate.point - floor) > 3.0 * sigma)
        note(res, "lambda " + std::to_string(spec.lambda) + " rho " +
                      std::to_string(spec.rho) + ": first-step rate " +
                      std::to_string(r.immediate.point) + " vs exact " +
                      std::to_string(floor));
    }
  }
  return res;
}

std::vector<std::string> parse_suite_list(const std::string& suites) {
  static const std::vector<std::string> all = {
      "abelian", "uniqueness", "conservation", "oracle", "bound"};
  if (suites == "all" || suites.empty()) return all;
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= suites.size()) {
    std::size_t comma = suites.find(',', pos);
    std::string name = comma == std::string::npos
                           ? suites.substr(pos)
                           : suites.substr(pos, comma - pos);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
      name.erase(name.begin());
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    bool known = false;
    for (const std::string& s : all) known = known || s == name;
    if (!known)
      fail(Errc::kDomain, "unknown verify suite '" + name + "'");
    out.push_back(name);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<SuiteResult> run_verify_suites(const std::string& suites,
                                           std::uint64_t seed,
                                           const VerifyScale& sc) {
  std::vector<SuiteResult> out;
  for (const std::string& name : parse_suite_list(suites)) {
    if (name == "abelian") out.push_back(check_abelian(seed, sc));
    else if (name == "uniqueness") out.push_back(check_uniqueness(seed, sc));
    else if (name == "conservation") out.push_back(check_conservation(seed, sc));
    else if (name == "oracle") out.push_back(check_oracle_agreement(seed, sc));
    else out.push_back(check_lower_bound(seed, sc));
  }
  return out;
}

}  // namespace arw
