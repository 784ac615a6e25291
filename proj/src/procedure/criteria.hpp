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

#include "core/types.hpp"
#include "procedure/params.hpp"

namespace arw {

// A configuration is good at level n when the closed interval [-k^n, k^n]
// holds enough mass overall (criterion 1) while no short window away from
// the endpoints is overcrowded (criterion 2):
//   C1: at least 2 k^n (rho_c_ref + 2 delta) particles in [-k^n, k^n];
//   C2: every window of length gamma k^n inside the interval minus its two
//       endpoints holds at most gamma k^n (rho_c_ref + delta) particles.
// Frozen boundary particles count toward C1; C2 windows never include the
// endpoints.
struct GoodReport {
  bool good = false;
  bool c1_ok = false;
  bool c2_ok = false;
  std::uint64_t mass = 0;            // particles in the closed interval
  double c1_threshold = 0.0;
  double c2_threshold = 0.0;
  std::uint64_t c2_violations = 0;   // number of overcrowded windows
  std::optional<std::int64_t> first_bad_window;  // left edge of the first one
};

GoodReport classify_good(const Configuration& c, unsigned level,
                         const ProcedureParams& p);

// The annulus check before stabilizing: blocks of length gamma k^n tile
// (k^n, k^{n+1}] on both sides; plentiful means every block holds at least
// gamma k^n (rho_c_ref + 2 delta) particles.
struct PlentifulReport {
  bool plentiful = false;
  std::uint64_t failing_blocks = 0;
  std::optional<std::int64_t> first_bad_block;  // left edge
};

PlentifulReport is_plentiful(const Configuration& c, unsigned level,
                             const ProcedureParams& p);

// Sparseness of a configuration over a region: every window of length
// gamma k^n inside [region.lo, region.hi] holds at most
// gamma k^n (rho_c_ref + delta) particles.
struct SparseReport {
  bool sparse = false;
  std::uint64_t failing_windows = 0;
  std::optional<std::int64_t> first_bad_window;
};

SparseReport is_sparse(const Configuration& c, Region r, unsigned level,
                       const ProcedureParams& p);

}  // namespace arw
