/* Copyright 2026 The Artifact Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the activated random walk toolkit. All functions returning
 * arw_status leave a thread-local message readable via arw_last_error()
 * when they fail. Strings returned through char** are heap-allocated and
 * must be released with arw_free(). Handles are opaque; release them with
 * their matching *_free function. No exceptions cross this boundary. */

#ifndef ARW_ARW_H_
#define ARW_ARW_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arw_status {
  ARW_OK = 0,
  ARW_E_DOMAIN = 1,
  ARW_E_PARSE = 2,
  ARW_E_UNKNOWN_KEY = 3,
  ARW_E_DUPLICATE_KEY = 4,
  ARW_E_OUT_OF_REGION = 5,
  ARW_E_ILLEGAL_TOPPLE = 6,
  ARW_E_ODOMETER_OVERFLOW = 7,
  ARW_E_NO_ACTIVE = 8,
  ARW_E_STATE_SPACE = 9,
  ARW_E_WINDOW = 10,
  ARW_E_IO = 11,
  ARW_E_INTERNAL = 12,
  ARW_E_VERIFY_FAILED = 13,
} arw_status;

/* Library version, e.g. "0.1.0". Static storage; do not free. */
const char* arw_version(void);

/* Message of the calling thread's most recent failure. Static storage,
 * overwritten by the next failing call on the same thread; do not free. */
const char* arw_last_error(void);

/* Releases a string obtained through any char** output parameter. */
void arw_free(char* p);

/* ---- run specs ------------------------------------------------------- */

typedef struct arw_spec arw_spec;

/* Parses `key = value` spec text. */
arw_status arw_spec_parse(const char* text, arw_spec** out);

/* Reads and parses a spec file. */
arw_status arw_spec_read(const char* path, arw_spec** out);

/* Canonical form: full schema in fixed order; stable across round trips. */
arw_status arw_spec_canonical(const arw_spec* spec, char** out_text);

void arw_spec_free(arw_spec* spec);

/* Runs the spec and writes results.csv (or results.jsonl) plus
 * manifest.json into out_dir. format is "csv" or "json-lines"; threads = 0
 * means one worker per hardware thread. The human-readable summary is
 * returned through out_summary when non-NULL. A verify run with failing
 * suites returns ARW_E_VERIFY_FAILED after writing its outputs. */
arw_status arw_execute(const arw_spec* spec, const char* out_dir,
                       const char* format, unsigned threads,
                       char** out_summary);

/* ---- configurations --------------------------------------------------- */

typedef struct arw_config arw_config;

/* Parses canonical text: "lo hi | s0 s1 ... | exited_left exited_right"
 * with "s" marking a sleeping site and positive integers active counts. */
arw_status arw_config_parse(const char* text, arw_config** out);

arw_status arw_config_text(const arw_config* c, char** out_text);

void arw_config_free(arw_config* c);

/* Stabilizes the configuration over its own region. mode is "kill" or
 * "freeze"; policy is "leftmost", "random", or "lifo" (policy_seed feeds
 * the random policy). budget = 0 means unlimited topplings; when the
 * budget runs out, *out_exhausted is 1 and the partial state is returned.
 * out_topplings receives the toppling count in decimal. Output pointers
 * may be NULL when the caller does not need them. */
arw_status arw_stabilize(const arw_config* c, unsigned long long oracle_seed,
                         double lambda, const char* mode, const char* policy,
                         unsigned long long policy_seed,
                         unsigned long long budget, arw_config** out_final,
                         char** out_topplings, int* out_exhausted);

/* ---- estimates -------------------------------------------------------- */

/* Fixation probability of the origin particle in a Bernoulli(rho) sleeping
 * environment, from `trials` independent runs of at most step_budget
 * instructions each. The Wilson interval lands in out_ci_lo / out_ci_hi. */
arw_status arw_fixation(double lambda, double rho, unsigned long long trials,
                        unsigned long long step_budget,
                        unsigned long long seed, unsigned threads,
                        double* out_point, double* out_ci_lo,
                        double* out_ci_hi);

/* The exact floor lambda / (1 + lambda) on the fixation probability. */
double arw_lower_bound(double lambda);

#ifdef __cplusplus
}
#endif

#endif /* ARW_ARW_H_ */
