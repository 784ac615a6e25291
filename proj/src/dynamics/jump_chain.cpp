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

#include "dynamics/jump_chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace arw {

JumpChain::JumpChain(const InstructionOracle& oracle, std::uint64_t trial_seed)
    : oracle_(oracle),
      cut_(oracle.lambda),
      trial_seed_(trial_seed),
      sel_base_(prf::stream_base(trial_seed, prf::kTrialSite, 0)),
      clk_base_(prf::stream_base(trial_seed, prf::kTrialClock, 0)) {}

std::uint64_t JumpChain::site_base(std::size_t i) const {
  return instruction_stream_base(oracle_,
                                 window_.lo + static_cast<std::int64_t>(i));
}

void JumpChain::init_from(const Configuration& c) {
  window_ = c.region();
  std::size_t w = static_cast<std::size_t>(window_.width());
  st_.resize(w);
  odo_.assign(w, 0);
  ibase_.resize(w);
  active_total_ = 0;
  for (std::size_t i = 0; i < w; ++i) {
    const SiteState& s = c.at(window_.lo + static_cast<std::int64_t>(i));
    st_[i] = s.sleeping ? -1 : static_cast<std::int64_t>(s.count);
    if (st_[i] > 0) active_total_ += st_[i];
    ibase_[i] = site_base(i);
  }
  exited_left_ = c.exited_left();
  exited_right_ = c.exited_right();
  fenwick_rebuild();
}

JumpChain JumpChain::grow(const InstructionOracle& oracle,
                          const EnvironmentSampler& env,
                          std::uint64_t trial_seed, Region initial_window) {
  env.validate();
  JumpChain jc(oracle, trial_seed);
  jc.env_ = env;
  jc.growing_ = true;
  jc.init_from(make_omega_star(env, initial_window));
  return jc;
}

JumpChain JumpChain::kill(const InstructionOracle& oracle,
                          const Configuration& initial,
                          std::uint64_t trial_seed) {
  JumpChain jc(oracle, trial_seed);
  jc.growing_ = false;
  jc.init_from(initial);
  return jc;
}

void JumpChain::fenwick_add(std::size_t i, std::int64_t d) {
  for (std::size_t j = i + 1; j <= st_.size(); j += j & (~j + 1)) fen_[j] += d;
}

void JumpChain::fenwick_rebuild() {
  std::size_t w = st_.size();
  fen_.assign(w + 1, 0);
  for (std::size_t i = 0; i < w; ++i) {
    if (st_[i] > 0) fen_[i + 1] += st_[i];
    std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
    if (parent <= w) fen_[parent] += fen_[i + 1];
  }
}

std::size_t JumpChain::select_site(std::int64_t target) const {
  // Smallest i with prefix-sum(0..i) > target.
  std::size_t w = st_.size();
  std::size_t pw = std::bit_floor(w);
  std::size_t pos = 0;
  std::int64_t rem = target;
  for (; pw; pw >>= 1) {
    std::size_t nxt = pos + pw;
    if (nxt <= w && fen_[nxt] <= rem) {
      pos = nxt;
      rem -= fen_[nxt];
    }
  }
  return pos;  // 0-based index of the selected site
}

void JumpChain::grow_window() {
  std::int64_t half =
      2 * std::max<std::int64_t>({-window_.lo, window_.hi, 1});
  Region next{-half, half};
  std::size_t w = static_cast<std::size_t>(next.width());
  std::vector<std::int64_t> st(w);
  std::vector<std::uint64_t> odo(w, 0);
  for (std::int64_t x = next.lo; x <= next.hi; ++x) {
    std::size_t i = static_cast<std::size_t>(x - next.lo);
    if (window_.contains(x)) {
      st[i] = st_[static_cast<std::size_t>(x - window_.lo)];
      odo[i] = odo_[static_cast<std::size_t>(x - window_.lo)];
    } else {
      st[i] = env_.occupied(x) ? -1 : 0;
    }
  }
  window_ = next;
  st_ = std::move(st);
  odo_ = std::move(odo);
  ibase_.resize(w);
  for (std::size_t i = 0; i < w; ++i) ibase_[i] = site_base(i);
  fenwick_rebuild();
}

void JumpChain::jump_step() {
  if (active_total_ == 0)
    fail(Errc::kNoActiveParticles, "jump step on a fixated configuration");

  double u1 = prf::to_unit(prf::draw_u64(sel_base_, steps_));
  double u2 = prf::to_unit(prf::draw_u64(clk_base_, steps_));
  ++steps_;

  std::int64_t target =
      static_cast<std::int64_t>(u1 * static_cast<double>(active_total_));
  if (target >= active_total_) target = active_total_ - 1;
  std::size_t i = select_site(target);

  // In growing mode make room before a particle at the edge moves.
  if (growing_ && (i == 0 || i + 1 == st_.size())) {
    std::int64_t x = window_.lo + static_cast<std::int64_t>(i);
    grow_window();
    i = static_cast<std::size_t>(x - window_.lo);
  }

  double rate = (1.0 + oracle_.lambda) * static_cast<double>(active_total_);
  clock_ += -std::log1p(-u2) / rate;

  std::uint64_t idx = ++odo_[i];
  std::uint64_t r = prf::draw_u64(ibase_[i], idx);
  if (r < cut_.right_end) {
    st_[i] -= 1;
    fenwick_add(i, -1);
    active_total_ -= 1;
    bool left = r < cut_.left_end;
    if (left && i == 0) {
      ++exited_left_;
      return;
    }
    if (!left && i + 1 == st_.size()) {
      ++exited_right_;
      return;
    }
    std::size_t dst = left ? i - 1 : i + 1;
    std::int64_t prev = st_[dst];
    if (prev == -1) {
      st_[dst] = 2;
      fenwick_add(dst, 2);
      active_total_ += 2;
    } else {
      st_[dst] = prev + 1;
      fenwick_add(dst, 1);
      active_total_ += 1;
    }
  } else {
    if (st_[i] == 1) {
      st_[i] = -1;
      fenwick_add(i, -1);
      active_total_ -= 1;
    }
  }
}

RunOutcome JumpChain::run_until(std::uint64_t step_budget) {
  while (active_total_ > 0 && steps_ < step_budget) jump_step();
  RunOutcome out;
  out.kind = active_total_ == 0 ? OutcomeKind::kFixated
                                : OutcomeKind::kBudgetExhausted;
  out.steps = steps_;
  out.clock = clock_;
  out.final_config = snapshot();
  return out;
}

Configuration JumpChain::snapshot() const {
  Configuration c(window_);
  for (std::size_t i = 0; i < st_.size(); ++i) {
    std::int64_t x = window_.lo + static_cast<std::int64_t>(i);
    if (st_[i] == -1)
      c.at(x) = SiteState{1, true};
    else
      c.at(x) = SiteState{static_cast<std::uint64_t>(st_[i]), false};
  }
  c.add_exited_left(exited_left_);
  c.add_exited_right(exited_right_);
  return c;
}

}  // namespace arw
