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

#include "dynamics/absorption.hpp"

#include <cmath>
#include <deque>

#include "common/error.hpp"
#include "core/oracle.hpp"

namespace arw {

namespace {

constexpr std::size_t kMaxWidth = 5;
constexpr std::uint64_t kMaxParticles = 3;

// Packed small state: per site 3 bits (0..3 = active count, 4 = sleeping),
// then two 2-bit exit tallies.
struct Small {
  std::uint8_t w = 0;
  std::uint8_t v[kMaxWidth] = {0, 0, 0, 0, 0};
  std::uint8_t exit_left = 0, exit_right = 0;

  std::uint32_t key() const {
    std::uint32_t k = 0;
    for (std::size_t i = 0; i < w; ++i) k |= std::uint32_t(v[i]) << (3 * i);
    k |= std::uint32_t(exit_left) << 15;
    k |= std::uint32_t(exit_right) << 17;
    return k;
  }

  std::uint64_t active_total() const {
    std::uint64_t a = 0;
    for (std::size_t i = 0; i < w; ++i)
      if (v[i] <= 3) a += v[i];
    return a;
  }

  bool has_sleeper() const {
    for (std::size_t i = 0; i < w; ++i)
      if (v[i] == 4) return true;
    return false;
  }

  void arrive(std::size_t i) { v[i] = v[i] == 4 ? 2 : v[i] + 1; }
};

Small from_key(std::uint32_t k, std::uint8_t w) {
  Small s;
  s.w = w;
  for (std::size_t i = 0; i < w; ++i) s.v[i] = (k >> (3 * i)) & 7u;
  s.exit_left = (k >> 15) & 3u;
  s.exit_right = (k >> 17) & 3u;
  return s;
}

Configuration to_config(const Small& s, Region region) {
  Configuration c(region);
  for (std::size_t i = 0; i < s.w; ++i) {
    std::int64_t x = region.lo + static_cast<std::int64_t>(i);
    if (s.v[i] == 4)
      c.at(x) = SiteState{1, true};
    else
      c.at(x) = SiteState{s.v[i], false};
  }
  c.add_exited_left(s.exit_left);
  c.add_exited_right(s.exit_right);
  return c;
}

}  // namespace

AbsorptionResult absorption_oracle(const Configuration& initial, double lambda) {
  validate_lambda(lambda);
  Region region = initial.region();
  if (static_cast<std::size_t>(region.width()) > kMaxWidth)
    fail(Errc::kStateSpaceTooLarge,
         "absorption oracle limited to regions of width <= 5");
  if (initial.site_mass() > kMaxParticles)
    fail(Errc::kStateSpaceTooLarge,
         "absorption oracle limited to <= 3 particles");

  Small start;
  start.w = static_cast<std::uint8_t>(region.width());
  for (std::size_t i = 0; i < start.w; ++i) {
    const SiteState& s = initial.at(region.lo + static_cast<std::int64_t>(i));
    start.v[i] = s.sleeping ? 4 : static_cast<std::uint8_t>(s.count);
  }

  // Exact instruction probabilities from the double-precision lambda.
  BigRat lam(lambda);
  BigRat p_move = BigRat(1) / (2 * (1 + lam));
  BigRat p_sleep = lam / (1 + lam);

  // Breadth-first enumeration of the reachable chain.
  std::map<std::uint32_t, std::size_t> transient_idx, absorbing_idx;
  std::vector<Small> transients, absorbings;
  std::vector<std::vector<std::pair<std::uint32_t, BigRat>>> rows;
  std::deque<std::uint32_t> todo;
  std::map<std::uint32_t, bool> seen;

  auto visit = [&](std::uint32_t k) {
    if (seen.emplace(k, true).second) todo.push_back(k);
  };
  visit(start.key());

  while (!todo.empty()) {
    std::uint32_t k = todo.front();
    todo.pop_front();
    Small s = from_key(k, start.w);
    std::uint64_t a = s.active_total();
    if (a == 0) {
      if (!absorbing_idx.count(k)) {
        absorbing_idx[k] = absorbings.size();
        absorbings.push_back(s);
      }
      continue;
    }
    transient_idx[k] = transients.size();
    transients.push_back(s);
    rows.emplace_back();
    auto& row = rows.back();
    for (std::size_t i = 0; i < s.w; ++i) {
      if (s.v[i] == 0 || s.v[i] == 4) continue;
      BigRat w_site = BigRat(s.v[i]) / BigRat(a);
      // Left / right moves.
      for (int dir = -1; dir <= 1; dir += 2) {
        Small n = s;
        n.v[i] -= 1;
        if (dir < 0 && i == 0)
          n.exit_left += 1;
        else if (dir > 0 && i + 1 == s.w)
          n.exit_right += 1;
        else
          n.arrive(i + (dir < 0 ? -1 : 1));
        row.push_back({n.key(), w_site * p_move});
        visit(n.key());
      }
      // Sleep: converts a lone active particle, no-op otherwise.
      Small n = s;
      if (n.v[i] == 1) n.v[i] = 4;
      row.push_back({n.key(), w_site * p_sleep});
      visit(n.key());
    }
  }

  std::size_t nt = transients.size(), na = absorbings.size();

  // Expected visit counts y solve (I - Q)^T y = e_start; the terminal
  // distribution is then y^T R. One dense exact elimination.
  std::vector<std::vector<BigRat>> m(nt, std::vector<BigRat>(nt + 1, BigRat(0)));
  for (std::size_t t = 0; t < nt; ++t) {
    m[t][t] += 1;
    for (auto& e : rows[t]) {
      auto it = transient_idx.find(e.first);
      if (it != transient_idx.end()) m[it->second][t] -= e.second;
    }
  }
  std::size_t start_t = transient_idx.count(start.key())
                            ? transient_idx[start.key()]
                            : static_cast<std::size_t>(-1);
  AbsorptionResult out;
  out.transient_states = nt;
  out.absorbing_states = na;

  std::vector<BigRat> y(nt, BigRat(0));
  if (start_t != static_cast<std::size_t>(-1)) {
    m[start_t][nt] = 1;
    // Forward elimination with first-nonzero pivoting (exact arithmetic).
    std::vector<std::size_t> order(nt);
    for (std::size_t c = 0, r = 0; c < nt && r < nt; ++c) {
      std::size_t p = r;
      while (p < nt && m[p][c] == 0) ++p;
      if (p == nt) fail(Errc::kInternal, "singular absorption system");
      std::swap(m[p], m[r]);
      for (std::size_t q = r + 1; q < nt; ++q) {
        if (m[q][c] == 0) continue;
        BigRat f = m[q][c] / m[r][c];
        for (std::size_t cc = c; cc <= nt; ++cc) m[q][cc] -= f * m[r][cc];
      }
      order[r] = c;
      ++r;
    }
    for (std::size_t ri = nt; ri-- > 0;) {
      std::size_t c = order[ri];
      BigRat acc = m[ri][nt];
      for (std::size_t cc = c + 1; cc < nt; ++cc) acc -= m[ri][cc] * y[cc];
      y[c] = acc / m[ri][c];
    }
  }

  std::vector<BigRat> dist(na, BigRat(0));
  if (start_t == static_cast<std::size_t>(-1)) {
    // Already absorbed.
    dist[absorbing_idx[start.key()]] = 1;
  } else {
    for (std::size_t t = 0; t < nt; ++t) {
      if (y[t] == 0) continue;
      for (auto& e : rows[t]) {
        auto it = absorbing_idx.find(e.first);
        if (it != absorbing_idx.end()) dist[it->second] += y[t] * e.second;
      }
    }
  }

  BigRat total = 0;
  for (std::size_t a = 0; a < na; ++a) {
    if (dist[a] == 0) continue;
    Configuration c = to_config(absorbings[a], region);
    out.distribution[to_text(c)] = dist[a];
    if (absorbings[a].has_sleeper()) out.prob_any_sleeping += dist[a];
    total += dist[a];
  }
  if (total != 1) fail(Errc::kInternal, "absorption probabilities do not sum to 1");
  return out;
}

double tv_distance(const std::map<std::string, double>& p,
                   const std::map<std::string, double>& q) {
  double acc = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    acc += std::fabs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q)
    if (!p.count(k)) acc += std::fabs(v);
  return 0.5 * acc;
}

}  // namespace arw
