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

#include "procedure/events.hpp"

#include <string>

namespace arw {

EventFlags detect_events(const Configuration& final_config, const Odometer& u,
                         unsigned n, const ProcedureParams& p) {
  unsigned level = n + 1;
  std::int64_t r = p.pow_k(level);
  std::int64_t rn = p.pow_k(n);
  if (!u.region().contains(Region{-r, r}))
    fail(Errc::kOutOfRegion, "odometer does not cover [-k^" +
                                 std::to_string(level) + ", k^" +
                                 std::to_string(level) + "]");

  EventFlags flags;

  // d1 exactly: sum > k^(3.5(n+1))  <=>  sum^2 > k^(7(n+1)).
  BigInt sum = 0;
  for (std::int64_t x = -r; x <= r; ++x) sum += u.at(x);
  flags.d1 = sum * sum > bigint_pow(p.k, 7 * level);

  bool zero_inside = false, zero_right_flank = false, zero_left_flank = false;
  for (std::int64_t x = -r + 1; x <= r - 1; ++x) {
    if (u.at(x) == 0) {
      zero_inside = true;
      if (x >= rn) zero_right_flank = true;
      if (x <= -rn) zero_left_flank = true;
    } else {
      if (!flags.z_left) flags.z_left = x;
      flags.z_right = x;
    }
  }

  GoodReport good = classify_good(final_config, level, p);

  if (!flags.d1) {
    flags.d2 = zero_inside;
    flags.d3 = !good.c1_ok;
    flags.d4 = !zero_inside && !good.c2_ok;
    if (flags.d2) {
      flags.f1 = !zero_right_flank;
      flags.f2 = !zero_left_flank;
      flags.f3 = zero_right_flank && zero_left_flank;
    }
  }
  return flags;
}

BigInt tilt_statistic(const Configuration& before, const Configuration& after,
                      std::int64_t z, std::int64_t hi) {
  if (hi < z) fail(Errc::kDomain, "tilt range is empty");
  if (!before.region().contains(Region{z, hi}) ||
      !after.region().contains(Region{z, hi}))
    fail(Errc::kOutOfRegion, "tilt range not covered by both configurations");
  BigInt acc = 0;
  for (std::int64_t j = z; j <= hi; ++j) {
    std::int64_t diff = static_cast<std::int64_t>(after.at(j).count) -
                        static_cast<std::int64_t>(before.at(j).count);
    if (diff != 0) acc += BigInt(j) * diff;
  }
  return acc;
}

bool tilt_exceeds(const BigInt& tilt, unsigned n, const ProcedureParams& p) {
  // threshold = (delta/10) * k^(2n+2); compare exactly via the rational
  // value of the double delta.
  BigRat thr = BigRat(p.delta) / 10 * BigRat(bigint_pow(p.k, 2 * n + 2));
  return BigRat(tilt) > thr;
}

}  // namespace arw
