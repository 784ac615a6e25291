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

#include "core/stabilize.hpp"

#include <set>

#include "common/prf.hpp"

namespace arw {

Policy policy_from_name(const std::string& name, std::uint64_t seed) {
  if (name == "leftmost") return Policy::leftmost();
  if (name == "random") return Policy::random(seed);
  if (name == "lifo") return Policy::lifo();
  fail(Errc::kDomain, "unknown policy '" + name + "' (leftmost, random, lifo)");
}

const char* to_string(PolicyKind k) noexcept {
  switch (k) {
    case PolicyKind::kLeftmost: return "leftmost";
    case PolicyKind::kRandom: return "random";
    case PolicyKind::kLifo: return "lifo";
  }
  return "?";
}

namespace {

// Flat working state over the target interval. Site encoding: -1 sleeping,
// 0 empty, n > 0 active particles; "sleeping implies count 1" is structural.
struct Engine {
  std::int64_t lo, hi;
  std::size_t w;
  std::size_t elig_lo, elig_hi;  // local index range eligible for toppling
  std::vector<std::int64_t> st;
  std::vector<std::uint64_t> odo;
  std::vector<std::uint64_t> base;
  InstructionCutoffs cut;
  std::uint64_t budget;
  std::uint64_t topples = 0;
  std::uint64_t exited_left = 0, exited_right = 0;
  bool kill;
  bool exhausted = false;
  std::vector<ToppleEvent>* log;

  Engine(const Configuration& c, const InstructionOracle& oracle,
         const StabilizeOptions& opt)
      : lo(opt.target.lo),
        hi(opt.target.hi),
        w(static_cast<std::size_t>(opt.target.width())),
        cut(oracle.lambda),
        budget(opt.budget),
        kill(opt.mode == BoundaryMode::kKill),
        log(opt.log) {
    if (!c.region().contains(opt.target))
      fail(Errc::kOutOfRegion, "stabilization target [" + std::to_string(lo) +
                                   ", " + std::to_string(hi) +
                                   "] outside configuration region");
    st.resize(w);
    odo.assign(w, 0);
    base.resize(w);
    for (std::size_t i = 0; i < w; ++i) {
      const SiteState& s = c.at(lo + static_cast<std::int64_t>(i));
      st[i] = s.sleeping ? -1 : static_cast<std::int64_t>(s.count);
      base[i] = prf::stream_base(
          oracle.seed, prf::kInstruction,
          static_cast<std::uint64_t>(lo + static_cast<std::int64_t>(i) -
                                     opt.stream_origin));
    }
    if (kill) {
      elig_lo = 0;
      elig_hi = w - 1;
    } else {
      // Freeze: only the open interior topples. Width <= 2 has no interior.
      elig_lo = 1;
      elig_hi = w >= 3 ? w - 2 : 0;
    }
  }

  bool eligible(std::size_t i) const { return i >= elig_lo && i <= elig_hi; }

  // Execute exactly one instruction at local site i (must be unstable).
  // notify(j) is called when a previously stable eligible site turns unstable.
  template <typename Notify>
  inline void exec(std::size_t i, Notify&& notify) {
    std::uint64_t idx = ++odo[i];
    std::uint64_t r = prf::draw_u64(base[i], idx);
    ++topples;
    if (r < cut.right_end) {
      if (log)
        log->push_back({lo + static_cast<std::int64_t>(i),
                        r < cut.left_end ? Instruction::kLeft : Instruction::kRight});
      --st[i];
      if (r < cut.left_end) {
        if (i == 0) {
          ++exited_left;  // kill mode only; freeze never topples i == 0
        } else {
          std::int64_t prev = st[i - 1];
          st[i - 1] = prev == -1 ? 2 : prev + 1;
          if (prev <= 0 && eligible(i - 1)) notify(i - 1);
        }
      } else {
        if (i == w - 1) {
          ++exited_right;
        } else {
          std::int64_t prev = st[i + 1];
          st[i + 1] = prev == -1 ? 2 : prev + 1;
          if (prev <= 0 && eligible(i + 1)) notify(i + 1);
        }
      }
    } else {
      if (log) log->push_back({lo + static_cast<std::int64_t>(i), Instruction::kSleep});
      if (st[i] == 1) st[i] = -1;
    }
  }

  void run_lifo() {
    if (log) drain_lifo<true>();
    else drain_lifo<false>();
  }

  // Hot path. Raw pointers keep the compiler from reloading vector members
  // across stores; each site is queued at most once, so the stack never
  // outgrows w. Toppling order matches the generic exec() path exactly.
  template <bool kLog>
  void drain_lifo() {
    std::int64_t* S = st.data();
    std::uint64_t* O = odo.data();
    const std::uint64_t* B = base.data();
    const std::uint64_t le = cut.left_end, re = cut.right_end;
    const std::size_t last = w - 1, el = elig_lo, eh = elig_hi;
    std::vector<std::uint32_t> stack_buf(w);
    std::vector<std::uint8_t> queued(w, 0);
    std::uint32_t* sbase = stack_buf.data();
    std::uint32_t* sp = sbase;
    for (std::size_t i = el; i <= eh && i < w; ++i)
      if (S[i] > 0) {
        *sp++ = static_cast<std::uint32_t>(i);
        queued[i] = 1;
      }
    std::uint64_t t = topples;
    std::uint64_t ex_l = exited_left, ex_r = exited_right;
    const std::uint64_t limit = budget;
    while (sp != sbase) {
      std::size_t i = *--sp;
      queued[i] = 0;
      while (S[i] > 0) {
        if (t >= limit) {
          topples = t;
          exited_left = ex_l;
          exited_right = ex_r;
          exhausted = true;
          return;
        }
        std::uint64_t r = prf::draw_u64(B[i], ++O[i]);
        ++t;
        if (r < re) {
          bool left = r < le;
          if constexpr (kLog)
            log->push_back({lo + static_cast<std::int64_t>(i),
                            left ? Instruction::kLeft : Instruction::kRight});
          --S[i];
          std::size_t j = left ? i - 1 : i + 1;  // wraps below zero
          if (j > last) {
            ex_l += left;
            ex_r += !left;
          } else {
            std::int64_t pj = S[j];
            S[j] = pj == -1 ? 2 : pj + 1;  // an arrival wakes a sleeper
            if (pj <= 0 && j >= el && j <= eh && !queued[j]) {
              queued[j] = 1;
              *sp++ = static_cast<std::uint32_t>(j);
            }
          }
        } else {
          if constexpr (kLog)
            log->push_back(
                {lo + static_cast<std::int64_t>(i), Instruction::kSleep});
          if (S[i] == 1) S[i] = -1;
        }
      }
    }
    topples = t;
    exited_left = ex_l;
    exited_right = ex_r;
  }

  void run_leftmost() {
    std::set<std::size_t> live;
    for (std::size_t i = elig_lo; i <= elig_hi; ++i)
      if (st[i] > 0) live.insert(i);
    auto notify = [&](std::size_t j) { live.insert(j); };
    while (!live.empty()) {
      if (topples >= budget) {
        exhausted = true;
        return;
      }
      std::size_t i = *live.begin();
      exec(i, notify);
      if (st[i] <= 0) live.erase(i);
    }
  }

  void run_random(std::uint64_t policy_seed) {
    std::vector<std::uint32_t> live;
    std::vector<std::int64_t> pos(w, -1);
    for (std::size_t i = elig_lo; i <= elig_hi; ++i)
      if (st[i] > 0) {
        pos[i] = static_cast<std::int64_t>(live.size());
        live.push_back(static_cast<std::uint32_t>(i));
      }
    std::uint64_t pol_base = prf::stream_base(policy_seed, prf::kPolicy, 0);
    std::uint64_t draws = 0;
    auto notify = [&](std::size_t j) {
      if (pos[j] < 0) {
        pos[j] = static_cast<std::int64_t>(live.size());
        live.push_back(static_cast<std::uint32_t>(j));
      }
    };
    auto remove = [&](std::size_t j) {
      std::size_t at = static_cast<std::size_t>(pos[j]);
      std::uint32_t last = live.back();
      live[at] = last;
      pos[last] = static_cast<std::int64_t>(at);
      live.pop_back();
      pos[j] = -1;
    };
    while (!live.empty()) {
      if (topples >= budget) {
        exhausted = true;
        return;
      }
      double u = prf::to_unit(prf::draw_u64(pol_base, ++draws));
      std::size_t j = static_cast<std::size_t>(u * static_cast<double>(live.size()));
      if (j >= live.size()) j = live.size() - 1;
      std::size_t i = live[j];
      exec(i, notify);
      if (st[i] <= 0) remove(i);
    }
  }
};

}  // namespace

StabilizationResult stabilize(const Configuration& c,
                              const InstructionOracle& oracle,
                              const StabilizeOptions& opt) {
  Engine eng(c, oracle, opt);
  switch (opt.policy.kind) {
    case PolicyKind::kLifo: eng.run_lifo(); break;
    case PolicyKind::kLeftmost: eng.run_leftmost(); break;
    case PolicyKind::kRandom: eng.run_random(opt.policy.seed); break;
  }

  StabilizationResult res{Configuration(c.region()), Odometer(opt.target)};
  res.config = c;
  for (std::size_t i = 0; i < eng.w; ++i) {
    std::int64_t x = opt.target.lo + static_cast<std::int64_t>(i);
    SiteState s;
    if (eng.st[i] == -1) {
      s.count = 1;
      s.sleeping = true;
    } else {
      s.count = static_cast<std::uint64_t>(eng.st[i]);
      s.sleeping = false;
    }
    res.config.at(x) = s;
    res.odometer.set(x, eng.odo[i]);
  }
  res.config.add_exited_left(eng.exited_left);
  res.config.add_exited_right(eng.exited_right);
  res.topplings = eng.topples;
  res.exhausted = eng.exhausted;
  if (opt.mode == BoundaryMode::kFreeze) {
    if (eng.st[0] > 0) res.frozen_left = static_cast<std::uint64_t>(eng.st[0]);
    if (eng.w > 1 && eng.st[eng.w - 1] > 0)
      res.frozen_right = static_cast<std::uint64_t>(eng.st[eng.w - 1]);
  }
  return res;
}

}  // namespace arw
