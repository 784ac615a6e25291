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
#include <string>
#include <vector>

#include "common/bigint.hpp"
#include "common/error.hpp"

namespace arw {

// One-dimensional lattice model with states {empty, sleeping, n active}.
// A sleeping site holds exactly one particle; arrival of an active
// particle wakes it (s + 1 = 2 active).

enum class Instruction : std::uint8_t { kLeft = 0, kRight = 1, kSleep = 2 };

const char* to_string(Instruction ins) noexcept;

// How particles leaving a region are treated: killed (tallied and removed)
// or frozen (boundary sites accumulate particles that are never toppled).
enum class BoundaryMode : std::uint8_t { kKill = 0, kFreeze = 1 };

struct SiteState {
  std::uint64_t count = 0;
  bool sleeping = false;  // invariant: sleeping implies count == 1

  bool stable() const noexcept { return count == 0 || sleeping; }
  bool operator==(const SiteState&) const = default;
};

// Closed integer interval [lo, hi].
struct Region {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t width() const noexcept { return hi - lo + 1; }
  bool contains(std::int64_t x) const noexcept { return x >= lo && x <= hi; }
  bool contains(const Region& r) const noexcept { return r.lo >= lo && r.hi <= hi; }
  bool operator==(const Region&) const = default;
};

class Configuration {
 public:
  Configuration() : region_{0, 0}, sites_(1) {}
  explicit Configuration(Region region);

  const Region& region() const noexcept { return region_; }

  const SiteState& at(std::int64_t x) const {
    check_in_region(x);
    return sites_[static_cast<std::size_t>(x - region_.lo)];
  }
  SiteState& at(std::int64_t x) {
    check_in_region(x);
    return sites_[static_cast<std::size_t>(x - region_.lo)];
  }

  std::uint64_t exited_left() const noexcept { return exited_left_; }
  std::uint64_t exited_right() const noexcept { return exited_right_; }
  void add_exited_left(std::uint64_t n) { exited_left_ += n; }
  void add_exited_right(std::uint64_t n) { exited_right_ += n; }

  // Mass on sites plus exited tallies; exact.
  std::uint64_t site_mass() const;
  std::uint64_t total_mass() const;

  std::uint64_t sleeping_sites() const;

  bool operator==(const Configuration&) const = default;

 private:
  void check_in_region(std::int64_t x) const {
    if (!region_.contains(x))
      fail(Errc::kOutOfRegion, "site " + std::to_string(x) + " outside region [" +
                                   std::to_string(region_.lo) + ", " +
                                   std::to_string(region_.hi) + "]");
  }

  Region region_;
  std::vector<SiteState> sites_;
  std::uint64_t exited_left_ = 0;
  std::uint64_t exited_right_ = 0;
};

// Canonical text form: "lo hi | s0 s1 ... | exitedL exitedR" where each
// site is 0, s, or a positive count of active particles. Round-trips exactly.
std::string to_text(const Configuration& c);
Configuration configuration_from_text(const std::string& text);

class Odometer {
 public:
  Odometer() : region_{0, 0}, counts_(1, 0) {}
  explicit Odometer(Region region);

  const Region& region() const noexcept { return region_; }

  std::uint64_t at(std::int64_t x) const {
    check_in_region(x);
    return counts_[static_cast<std::size_t>(x - region_.lo)];
  }

  void increment(std::int64_t x) {
    check_in_region(x);
    auto& c = counts_[static_cast<std::size_t>(x - region_.lo)];
    if (c == ~0ull) fail(Errc::kOdometerOverflow, "odometer overflow at site " + std::to_string(x));
    ++c;
  }

  void set(std::int64_t x, std::uint64_t v) {
    check_in_region(x);
    counts_[static_cast<std::size_t>(x - region_.lo)] = v;
  }

  BigInt sum() const;

  bool operator==(const Odometer&) const = default;

 private:
  void check_in_region(std::int64_t x) const {
    if (!region_.contains(x))
      fail(Errc::kOutOfRegion, "site " + std::to_string(x) + " outside odometer region [" +
                                   std::to_string(region_.lo) + ", " +
                                   std::to_string(region_.hi) + "]");
  }

  Region region_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace arw
