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

#include "core/types.hpp"

#include <charconv>
#include <sstream>

namespace arw {

const char* to_string(Instruction ins) noexcept {
  switch (ins) {
    case Instruction::kLeft: return "left";
    case Instruction::kRight: return "right";
    case Instruction::kSleep: return "sleep";
  }
  return "?";
}

Configuration::Configuration(Region region) : region_(region) {
  if (region.hi < region.lo)
    fail(Errc::kDomain, "empty region [" + std::to_string(region.lo) + ", " +
                            std::to_string(region.hi) + "]");
  sites_.resize(static_cast<std::size_t>(region.width()));
}

std::uint64_t Configuration::site_mass() const {
  std::uint64_t m = 0;
  for (const auto& s : sites_) {
    if (__builtin_add_overflow(m, s.count, &m))
      fail(Errc::kInternal, "site mass exceeds 64 bits");
  }
  return m;
}

std::uint64_t Configuration::total_mass() const {
  std::uint64_t m = site_mass();
  if (__builtin_add_overflow(m, exited_left_, &m) ||
      __builtin_add_overflow(m, exited_right_, &m))
    fail(Errc::kInternal, "total mass exceeds 64 bits");
  return m;
}

std::uint64_t Configuration::sleeping_sites() const {
  std::uint64_t n = 0;
  for (const auto& s : sites_) n += s.sleeping ? 1 : 0;
  return n;
}

std::string to_text(const Configuration& c) {
  std::ostringstream out;
  out << c.region().lo << ' ' << c.region().hi << " |";
  for (std::int64_t x = c.region().lo; x <= c.region().hi; ++x) {
    const SiteState& s = c.at(x);
    out << ' ';
    if (s.sleeping)
      out << 's';
    else
      out << s.count;
  }
  out << " | " << c.exited_left() << ' ' << c.exited_right();
  return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_i64(const std::string& tok, const char* what) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(Errc::kParse, std::string("bad ") + what + " '" + tok + "' in configuration text");
  return v;
}

std::uint64_t parse_u64(const std::string& tok, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(Errc::kParse, std::string("bad ") + what + " '" + tok + "' in configuration text");
  return v;
}

}  // namespace

Configuration configuration_from_text(const std::string& text) {
  auto toks = split_ws(text);
  // Layout: lo hi | w sites | eL eR  => tokens = 2 + 1 + w + 1 + 2.
  if (toks.size() < 7) fail(Errc::kParse, "configuration text too short");
  if (toks[2] != "|") fail(Errc::kParse, "expected '|' after region bounds");
  std::int64_t lo = parse_i64(toks[0], "region bound");
  std::int64_t hi = parse_i64(toks[1], "region bound");
  if (hi < lo) fail(Errc::kParse, "region bounds out of order in configuration text");
  std::size_t w = static_cast<std::size_t>(hi - lo + 1);
  if (toks.size() != 2 + 1 + w + 1 + 2)
    fail(Errc::kParse, "configuration text has wrong token count for its region");
  if (toks[3 + w] != "|") fail(Errc::kParse, "expected '|' before exit tallies");
  Configuration c(Region{lo, hi});
  for (std::size_t i = 0; i < w; ++i) {
    const std::string& tok = toks[3 + i];
    SiteState s;
    if (tok == "s") {
      s.count = 1;
      s.sleeping = true;
    } else {
      s.count = parse_u64(tok, "site state");
      s.sleeping = false;
    }
    c.at(lo + static_cast<std::int64_t>(i)) = s;
  }
  c.add_exited_left(parse_u64(toks[4 + w], "exit tally"));
  c.add_exited_right(parse_u64(toks[5 + w], "exit tally"));
  return c;
}

Odometer::Odometer(Region region) : region_(region) {
  if (region.hi < region.lo)
    fail(Errc::kDomain, "empty odometer region [" + std::to_string(region.lo) + ", " +
                            std::to_string(region.hi) + "]");
  counts_.assign(static_cast<std::size_t>(region.width()), 0);
}

BigInt Odometer::sum() const {
  // Partial sums in native width; spill to BigInt only on carry.
  BigInt total = 0;
  std::uint64_t acc = 0;
  for (std::uint64_t c : counts_) {
    std::uint64_t next;
    if (__builtin_add_overflow(acc, c, &next)) {
      total += acc;
      acc = c;
    } else {
      acc = next;
    }
  }
  total += acc;
  return total;
}

}  // namespace arw
