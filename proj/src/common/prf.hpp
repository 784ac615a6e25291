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

#include <cmath>
#include <cstdint>

namespace arw::prf {

// Counter-based pseudorandomness: every draw is a pure function of
// (seed, stream tag, site, index), so any draw can be recomputed in O(1)
// and simulations are reproducible bit-for-bit regardless of evaluation
// order or thread count.
//
// Construction: a per-(seed, tag, site) base point, advanced by a Weyl
// step per index, finalized with the splitmix64 mixer. The finalizer has
// full avalanche; distinct tags keep logically separate streams disjoint
// even under equal seeds.

inline constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Stream tags. Values are stable: they are part of the reproducibility
// contract (a seed + tag + site + index quadruple names one draw forever).
enum Stream : std::uint64_t {
  kInstruction = 1,  // per-site instruction stacks
  kEnvironment = 2,  // initial occupancy of sites
  kTrialSite = 3,    // jump-chain site selection
  kTrialClock = 4,   // jump-chain holding times
  kPolicy = 5,       // "random" stabilization policy draws
  kPlacement = 6,    // particle placement at density < 1
  kDerive = 7,       // seed derivation for trials / sweep cells
};

constexpr std::uint64_t stream_base(std::uint64_t seed, std::uint64_t tag,
                                    std::uint64_t site) noexcept {
  std::uint64_t h = mix64(seed + kWeyl * tag);
  return mix64(h ^ mix64(site * 0xD1B54A32D192ED03ull + tag));
}

constexpr std::uint64_t draw_u64(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base + index * kWeyl);
}

// Uniform double in [0,1) with 53-bit resolution.
constexpr double to_unit(std::uint64_t u) noexcept {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t tag, std::uint64_t site,
                      std::uint64_t index) noexcept {
  return to_unit(draw_u64(stream_base(seed, tag, site), index));
}

// Integer cutoff with floor(p * 2^64) semantics. Computed in long double
// so probabilities within 2^-64 of 1 do not overflow the cast.
inline std::uint64_t cutoff_from_prob(double p) noexcept {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return ~0ull;
  long double x = std::ldexp(static_cast<long double>(p), 64);
  if (x >= 18446744073709551615.0L) return ~0ull;
  return static_cast<std::uint64_t>(x);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t a,
                                 std::uint64_t b = 0) noexcept {
  return draw_u64(stream_base(base_seed, kDerive, a), b);
}

}  // namespace arw::prf
