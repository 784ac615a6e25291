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

#include "arw/arw.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "common/error.hpp"
#include "common/version.hpp"
#include "core/stabilize.hpp"
#include "core/types.hpp"
#include "estimators/estimate.hpp"
#include "estimators/fixation.hpp"
#include "io/execute.hpp"
#include "io/runspec.hpp"

struct arw_spec {
  arw::RunSpec spec;
};

struct arw_config {
  arw::Configuration config;
};

namespace {

thread_local std::string tl_error;

arw_status status_of(arw::Errc c) {
  switch (c) {
    case arw::Errc::kDomain: return ARW_E_DOMAIN;
    case arw::Errc::kParse: return ARW_E_PARSE;
    case arw::Errc::kUnknownKey: return ARW_E_UNKNOWN_KEY;
    case arw::Errc::kDuplicateKey: return ARW_E_DUPLICATE_KEY;
    case arw::Errc::kOutOfRegion: return ARW_E_OUT_OF_REGION;
    case arw::Errc::kIllegalTopple: return ARW_E_ILLEGAL_TOPPLE;
    case arw::Errc::kOdometerOverflow: return ARW_E_ODOMETER_OVERFLOW;
    case arw::Errc::kNoActiveParticles: return ARW_E_NO_ACTIVE;
    case arw::Errc::kStateSpaceTooLarge: return ARW_E_STATE_SPACE;
    case arw::Errc::kWindowExcludesOrigin: return ARW_E_WINDOW;
    case arw::Errc::kIo: return ARW_E_IO;
    case arw::Errc::kInternal: return ARW_E_INTERNAL;
  }
  return ARW_E_INTERNAL;
}

// Runs fn inside the exception firewall; nothing propagates past here.
template <typename Fn>
arw_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const arw::Error& e) {
    tl_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    tl_error = e.what();
    return ARW_E_INTERNAL;
  } catch (...) {
    tl_error = "unknown error";
    return ARW_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

arw_status out_string(const std::string& s, char** out) {
  if (out == nullptr) return ARW_OK;
  *out = dup_string(s);
  if (*out == nullptr) {
    tl_error = "out of memory";
    return ARW_E_INTERNAL;
  }
  return ARW_OK;
}

arw_status require(bool ok, const char* what) {
  if (ok) return ARW_OK;
  tl_error = std::string("null argument: ") + what;
  return ARW_E_DOMAIN;
}

}  // namespace

extern "C" {

const char* arw_version(void) { return arw::kVersionString; }

const char* arw_last_error(void) { return tl_error.c_str(); }

void arw_free(char* p) { std::free(p); }

arw_status arw_spec_parse(const char* text, arw_spec** out) {
  if (arw_status s = require(text != nullptr && out != nullptr, "arw_spec_parse"))
    return s;
  *out = nullptr;
  return guarded([&] {
    auto* h = new arw_spec{arw::parse_run_spec(text)};
    *out = h;
    return ARW_OK;
  });
}

arw_status arw_spec_read(const char* path, arw_spec** out) {
  if (arw_status s = require(path != nullptr && out != nullptr, "arw_spec_read"))
    return s;
  *out = nullptr;
  return guarded([&] {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      tl_error = std::string("cannot read ") + path;
      return ARW_E_IO;
    }
    std::ostringstream body;
    body << f.rdbuf();
    *out = new arw_spec{arw::parse_run_spec(body.str())};
    return ARW_OK;
  });
}

arw_status arw_spec_canonical(const arw_spec* spec, char** out_text) {
  if (arw_status s = require(spec != nullptr && out_text != nullptr,
                             "arw_spec_canonical"))
    return s;
  return guarded(
      [&] { return out_string(arw::serialize_run_spec(spec->spec), out_text); });
}

void arw_spec_free(arw_spec* spec) { delete spec; }

arw_status arw_execute(const arw_spec* spec, const char* out_dir,
                       const char* format, unsigned threads,
                       char** out_summary) {
  if (arw_status s = require(
          spec != nullptr && out_dir != nullptr && format != nullptr,
          "arw_execute"))
    return s;
  return guarded([&] {
    arw::ExecutionResult res =
        arw::execute_run(spec->spec, out_dir, format, threads);
    std::string summary;
    for (const std::string& line : res.summary) {
      summary += line;
      summary += '\n';
    }
    if (arw_status s = out_string(summary, out_summary)) return s;
    if (!res.ok) {
      tl_error = "verification suites reported failures";
      return ARW_E_VERIFY_FAILED;
    }
    return ARW_OK;
  });
}

arw_status arw_config_parse(const char* text, arw_config** out) {
  if (arw_status s =
          require(text != nullptr && out != nullptr, "arw_config_parse"))
    return s;
  *out = nullptr;
  return guarded([&] {
    *out = new arw_config{arw::configuration_from_text(text)};
    return ARW_OK;
  });
}

arw_status arw_config_text(const arw_config* c, char** out_text) {
  if (arw_status s =
          require(c != nullptr && out_text != nullptr, "arw_config_text"))
    return s;
  return guarded([&] { return out_string(arw::to_text(c->config), out_text); });
}

void arw_config_free(arw_config* c) { delete c; }

arw_status arw_stabilize(const arw_config* c, unsigned long long oracle_seed,
                         double lambda, const char* mode, const char* policy,
                         unsigned long long policy_seed,
                         unsigned long long budget, arw_config** out_final,
                         char** out_topplings, int* out_exhausted) {
  if (arw_status s = require(c != nullptr && mode != nullptr && policy != nullptr,
                             "arw_stabilize"))
    return s;
  if (out_final != nullptr) *out_final = nullptr;
  return guarded([&] {
    arw::BoundaryMode bm;
    if (std::strcmp(mode, "kill") == 0) {
      bm = arw::BoundaryMode::kKill;
    } else if (std::strcmp(mode, "freeze") == 0) {
      bm = arw::BoundaryMode::kFreeze;
    } else {
      tl_error = std::string("mode = ") + mode +
                 " out of range: mode in {kill, freeze}";
      return ARW_E_DOMAIN;
    }
    arw::StabilizeOptions opt;
    opt.target = c->config.region();
    opt.mode = bm;
    opt.policy = arw::policy_from_name(policy, policy_seed);
    if (budget > 0) opt.budget = budget;
    arw::InstructionOracle oracle{oracle_seed, lambda};
    arw::StabilizationResult r = arw::stabilize(c->config, oracle, opt);
    if (out_final != nullptr) *out_final = new arw_config{std::move(r.config)};
    if (out_exhausted != nullptr) *out_exhausted = r.exhausted ? 1 : 0;
    return out_string(arw::to_decimal(r.topplings), out_topplings);
  });
}

arw_status arw_fixation(double lambda, double rho, unsigned long long trials,
                        unsigned long long step_budget,
                        unsigned long long seed, unsigned threads,
                        double* out_point, double* out_ci_lo,
                        double* out_ci_hi) {
  return guarded([&] {
    arw::FixationSpec spec;
    spec.lambda = lambda;
    spec.rho = rho;
    spec.trials = trials;
    spec.step_budget = step_budget;
    spec.seed = seed;
    spec.threads = threads;
    arw::FixationResult r = arw::fixation_probability(spec);
    if (out_point != nullptr) *out_point = r.overall.point;
    if (out_ci_lo != nullptr) *out_ci_lo = r.overall.ci_lo;
    if (out_ci_hi != nullptr) *out_ci_hi = r.overall.ci_hi;
    return ARW_OK;
  });
}

double arw_lower_bound(double lambda) {
  return lambda > 0 ? arw::lower_bound(lambda) : 0.0;
}

}  // extern "C"
