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

#include "procedure/params.hpp"

#include <cmath>
#include <string>

namespace arw {

namespace {

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > (std::int64_t(1) << 52) / base)
      fail(Errc::kDomain, "k^" + std::to_string(exp) + " overflows the usable range");
    r *= base;
  }
  return r;
}

}  // namespace

void ProcedureParams::validate() const {
  if (!(rho > 0.0) || !(rho < 1.0))
    fail(Errc::kDomain, "rho = " + std::to_string(rho) + " out of range: rho in (0,1)");
  if (!(rho_c_ref > 0.0) || !(rho_c_ref < rho))
    fail(Errc::kDomain, "need 0 < rho_c_ref < rho < 1, got rho_c_ref = " +
                            std::to_string(rho_c_ref) + ", rho = " + std::to_string(rho));
  if (k < 2) fail(Errc::kDomain, "k must be >= 2, got " + std::to_string(k));
  if (gamma_inv < 1)
    fail(Errc::kDomain, "gamma_inv must be a positive integer");
  if (!(gamma > 0.0) || gamma > 1.0)
    fail(Errc::kDomain, "gamma must lie in (0, 1]");
  double recon = 1.0 / static_cast<double>(gamma_inv);
  if (std::fabs(gamma - recon) > 1e-12 * recon)
    fail(Errc::kDomain, "gamma must equal 1/gamma_inv exactly");
  if (k % gamma_inv != 0)
    fail(Errc::kDomain, "k * gamma must be an integer (gamma_inv must divide k)");
  if (!(delta > 0.0))
    fail(Errc::kDomain, "delta must be positive");
  if (strict) {
    double dmax = (rho - rho_c_ref) / 3.0;
    if (!(delta < dmax))
      fail(Errc::kDomain, "strict mode requires delta < (rho - rho_c_ref)/3 = " +
                              std::to_string(dmax));
    if (!(static_cast<double>(k) > 200.0 / (delta * delta)))
      fail(Errc::kDomain, "strict mode requires k > 200/delta^2 = " +
                              std::to_string(200.0 / (delta * delta)));
    if (!(gamma < delta / 10.0))
      fail(Errc::kDomain, "strict mode requires gamma < delta/10");
  }
}

std::int64_t ProcedureParams::pow_k(unsigned n) const { return checked_pow(k, n); }

std::int64_t ProcedureParams::window_len(unsigned n) const {
  if (n < 1) fail(Errc::kDomain, "window length defined for levels n >= 1");
  return pow_k(n) / gamma_inv;  // exact: gamma_inv divides k
}

ProcedureParams choose_parameters(double rho, double rho_c_ref, bool strict,
                                  std::optional<std::int64_t> k,
                                  std::optional<double> delta,
                                  std::optional<double> gamma) {
  ProcedureParams p;
  p.rho = rho;
  p.rho_c_ref = rho_c_ref;
  p.strict = strict;
  if (!(rho > 0.0) || !(rho < 1.0))
    fail(Errc::kDomain, "rho = " + std::to_string(rho) + " out of range: rho in (0,1)");
  if (!(rho_c_ref > 0.0) || !(rho_c_ref < rho))
    fail(Errc::kDomain, "need 0 < rho_c_ref < rho < 1");

  if (strict) {
    p.delta = delta.value_or(0.9 * (rho - rho_c_ref) / 3.0);
    // Largest gamma = 1/m strictly below delta/10.
    double bound = p.delta / 10.0;
    std::int64_t m = static_cast<std::int64_t>(std::floor(10.0 / p.delta)) + 1;
    while (1.0 / static_cast<double>(m) >= bound) ++m;
    p.gamma_inv = gamma ? static_cast<std::int64_t>(std::llround(1.0 / *gamma)) : m;
    p.gamma = 1.0 / static_cast<double>(p.gamma_inv);
    // Least k above 200/delta^2, rounded up to a multiple of gamma_inv.
    double kmin = 200.0 / (p.delta * p.delta);
    std::int64_t k0 = static_cast<std::int64_t>(std::floor(kmin)) + 1;
    if (k) {
      p.k = *k;
    } else {
      p.k = ((k0 + p.gamma_inv - 1) / p.gamma_inv) * p.gamma_inv;
    }
  } else {
    if (!k || !delta || !gamma)
      fail(Errc::kDomain,
           "non-strict parameter choice requires explicit k, delta and gamma");
    p.k = *k;
    p.delta = *delta;
    p.gamma_inv = static_cast<std::int64_t>(std::llround(1.0 / *gamma));
    if (p.gamma_inv < 1) p.gamma_inv = 1;
    p.gamma = 1.0 / static_cast<double>(p.gamma_inv);
    if (std::fabs(*gamma - p.gamma) > 1e-9 * p.gamma)
      fail(Errc::kDomain, "gamma must be the reciprocal of an integer");
  }
  p.validate();
  return p;
}

}  // namespace arw
