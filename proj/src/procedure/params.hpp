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
#include "common/error.hpp"

namespace arw {

// Parameters of the interval-doubling stabilization scheme. Windows are
// [-k^n, k^n]; density margins are controlled by delta and window length by
// gamma = 1/gamma_inv. "strict" enforces the full constraint set
//   delta < (rho - rho_c_ref)/3,  k > 200/delta^2,  gamma < delta/10;
// otherwise only the structural constraints hold (k >= 2, gamma in (0,1],
// k*gamma integral, 1/gamma integral), which admits desk-scale runs.
struct ProcedureParams {
  double rho = 0.0;        // initial particle density
  double rho_c_ref = 0.0;  // reference critical density the margins lean on
  double delta = 0.0;
  double gamma = 0.0;
  std::int64_t gamma_inv = 0;  // exact 1/gamma
  std::int64_t k = 0;
  bool strict = false;

  void validate() const;

  // gamma * k^n as an exact integer (window length at level n). n >= 1.
  std::int64_t window_len(unsigned n) const;
  // k^n with overflow guard.
  std::int64_t pow_k(unsigned n) const;
};

// Derive parameters from the densities alone. In strict mode delta takes
// 90% of its allowed range, gamma is the largest 1/m below delta/10, and k
// is the least admissible multiple of gamma_inv. Non-strict mode requires
// explicit k, delta, gamma choices.
ProcedureParams choose_parameters(double rho, double rho_c_ref, bool strict,
                                  std::optional<std::int64_t> k = {},
                                  std::optional<double> delta = {},
                                  std::optional<double> gamma = {});

}  // namespace arw
