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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace arw {

// Exact integers for odometer totals and threshold comparisons; exact
// rationals for the small-system absorption solve. Totals can exceed
// 64 bits at deep stages, and the event thresholds k^(3.5(n+1)) are
// compared exactly by squaring, so no floating point enters the decision.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt bigint_pow(std::int64_t base, unsigned exp) {
  BigInt b = base;
  return boost::multiprecision::pow(b, exp);
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace arw
