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

#include "procedure/criteria.hpp"

#include <string>

namespace arw {

namespace {

void require_cover(const Configuration& c, Region want, const char* what) {
  if (!c.region().contains(want))
    fail(Errc::kOutOfRegion, std::string(what) + " needs sites [" +
                                 std::to_string(want.lo) + ", " +
                                 std::to_string(want.hi) +
                                 "] but the configuration covers [" +
                                 std::to_string(c.region().lo) + ", " +
                                 std::to_string(c.region().hi) + "]");
}

std::uint64_t range_mass(const Configuration& c, std::int64_t lo, std::int64_t hi) {
  std::uint64_t m = 0;
  for (std::int64_t x = lo; x <= hi; ++x) m += c.at(x).count;
  return m;
}

}  // namespace

GoodReport classify_good(const Configuration& c, unsigned level,
                         const ProcedureParams& p) {
  if (level < 1) fail(Errc::kDomain, "goodness is defined for levels n >= 1");
  std::int64_t r = p.pow_k(level);
  require_cover(c, Region{-r, r}, "goodness check");

  GoodReport rep;
  rep.mass = range_mass(c, -r, r);
  rep.c1_threshold = 2.0 * static_cast<double>(r) * (p.rho_c_ref + 2.0 * p.delta);
  rep.c1_ok = static_cast<double>(rep.mass) >= rep.c1_threshold;

  std::int64_t len = p.window_len(level);
  rep.c2_threshold = static_cast<double>(len) * (p.rho_c_ref + p.delta);
  rep.c2_ok = true;
  // Windows of length len inside [-r+1, r-1].
  std::int64_t lo = -r + 1, hi = r - 1;
  if (hi - lo + 1 >= len) {
    std::uint64_t sum = range_mass(c, lo, lo + len - 1);
    std::int64_t a = lo;
    for (;;) {
      if (static_cast<double>(sum) > rep.c2_threshold) {
        rep.c2_ok = false;
        ++rep.c2_violations;
        if (!rep.first_bad_window) rep.first_bad_window = a;
      }
      if (a + len - 1 >= hi) break;
      sum += c.at(a + len).count;
      sum -= c.at(a).count;
      ++a;
    }
  }
  rep.good = rep.c1_ok && rep.c2_ok;
  return rep;
}

PlentifulReport is_plentiful(const Configuration& c, unsigned level,
                             const ProcedureParams& p) {
  if (level < 1) fail(Errc::kDomain, "plentiful is defined for levels n >= 1");
  std::int64_t rn = p.pow_k(level);
  std::int64_t rnext = p.pow_k(level + 1);
  require_cover(c, Region{-rnext, rnext}, "plentiful check");

  std::int64_t len = p.window_len(level);
  double threshold = static_cast<double>(len) * (p.rho_c_ref + 2.0 * p.delta);
  std::int64_t blocks = (p.k - 1) * p.gamma_inv;

  PlentifulReport rep;
  rep.plentiful = true;
  for (std::int64_t j = 1; j <= blocks; ++j) {
    std::int64_t lo = rn + (j - 1) * len + 1;
    std::int64_t hi = rn + j * len;
    std::uint64_t right = range_mass(c, lo, hi);
    std::uint64_t left = range_mass(c, -hi, -lo);
    if (static_cast<double>(right) < threshold) {
      rep.plentiful = false;
      ++rep.failing_blocks;
      if (!rep.first_bad_block) rep.first_bad_block = lo;
    }
    if (static_cast<double>(left) < threshold) {
      rep.plentiful = false;
      ++rep.failing_blocks;
      if (!rep.first_bad_block) rep.first_bad_block = -hi;
    }
  }
  return rep;
}

SparseReport is_sparse(const Configuration& c, Region r, unsigned level,
                       const ProcedureParams& p) {
  if (level < 1) fail(Errc::kDomain, "sparseness is defined for levels n >= 1");
  require_cover(c, r, "sparseness check");
  std::int64_t len = p.window_len(level);
  double threshold = static_cast<double>(len) * (p.rho_c_ref + p.delta);

  SparseReport rep;
  rep.sparse = true;
  if (r.width() < len) return rep;
  std::uint64_t sum = range_mass(c, r.lo, r.lo + len - 1);
  std::int64_t a = r.lo;
  for (;;) {
    if (static_cast<double>(sum) > threshold) {
      rep.sparse = false;
      ++rep.failing_windows;
      if (!rep.first_bad_window) rep.first_bad_window = a;
    }
    if (a + len - 1 >= r.hi) break;
    sum += c.at(a + len).count;
    sum -= c.at(a).count;
    ++a;
  }
  return rep;
}

}  // namespace arw
