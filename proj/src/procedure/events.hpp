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
#include <optional>

#include "common/bigint.hpp"
#include "core/types.hpp"
#include "procedure/criteria.hpp"
#include "procedure/params.hpp"

namespace arw {

// Diagnostic events for the stage that extends level n to level n+1,
// evaluated on the final configuration and the stage odometer over
// [-k^(n+1), k^(n+1)]:
//   d1: odometer sum exceeds k^(3.5(n+1))        (exact: sum^2 > k^(7(n+1)))
//   d2: not d1, and some site of the open interval has zero odometer
//   d3: not d1, and the configuration fails criterion 1 at level n+1
//   d4: not d1, odometer positive everywhere inside, and criterion 2 fails
// d2 splits by where the zero-odometer sites sit relative to +-k^n:
//   f1: d2 and no zero odometer at sites >= k^n
//   f2: d2 and no zero odometer at sites <= -k^n
//   f3: d2 and zero odometers on both of those flanks
// (f1 and f2 can hold together; the three cover d2, they do not partition it.)
// z_left / z_right are the extremes of the positive-odometer set inside the
// open interval, when it is nonempty.
struct EventFlags {
  bool d1 = false, d2 = false, d3 = false, d4 = false;
  bool f1 = false, f2 = false, f3 = false;
  std::optional<std::int64_t> z_left, z_right;
};

EventFlags detect_events(const Configuration& final_config, const Odometer& u,
                         unsigned n, const ProcedureParams& p);

// Mass-transport statistic: sum over j in [z, hi] of j * (after(j) - before(j)).
// Along a toppling sequence in which no site left of z topples, the statistic
// moves by at most 1 per toppling (sleep instructions move it by 0).
BigInt tilt_statistic(const Configuration& before, const Configuration& after,
                      std::int64_t z, std::int64_t hi);

// Exceedance threshold of the tilt event at stage n: (delta/10) * k^(2n+2),
// compared exactly.
bool tilt_exceeds(const BigInt& tilt, unsigned n, const ProcedureParams& p);

}  // namespace arw
