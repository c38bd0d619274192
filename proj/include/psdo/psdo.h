/* Copyright (C) 2026 The psdo authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#ifndef PSDO_PSDO_H
#define PSDO_PSDO_H

#include <stddef.h>

#if defined(_WIN32)
#define PSDO_API __declspec(dllexport)
#else
#define PSDO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psdo_status {
  PSDO_OK = 0,
  PSDO_ERR_CONFIG_PARSE = 1,
  PSDO_ERR_VALIDATION = 2,
  PSDO_ERR_EXECUTION = 3,
  PSDO_ERR_INVALID_ARGUMENT = 4,
  PSDO_ERR_NULL = 5
} psdo_status;

typedef enum psdo_verdict {
  PSDO_VERDICT_PASS = 0,
  PSDO_VERDICT_FAIL = 1,
  PSDO_VERDICT_NOT_APPLICABLE = 2
} psdo_verdict;

typedef struct psdo_scenario psdo_scenario;
typedef struct psdo_report psdo_report;

/* Library version string, e.g. "1.0.0". */
PSDO_API const char* psdo_version(void);

/* Message of the last failed call on this thread; empty when none. */
PSDO_API const char* psdo_last_error(void);

/* Name of the error kind behind the last failure (e.g. "AngleSumTooLarge"); empty when none. */
PSDO_API const char* psdo_last_error_kind(void);

PSDO_API psdo_status psdo_scenario_load_file(const char* path, psdo_scenario** out);
PSDO_API psdo_status psdo_scenario_load_string(const char* text, psdo_scenario** out);
PSDO_API void psdo_scenario_free(psdo_scenario* scenario);

/* Applies a "dotted.key=value" override. */
PSDO_API psdo_status psdo_scenario_set(psdo_scenario* scenario, const char* assignment);
PSDO_API psdo_status psdo_scenario_set_seed(psdo_scenario* scenario, unsigned long long seed);

/* Resolved configuration as JSON. Owned by the scenario. */
PSDO_API const char* psdo_scenario_config(const psdo_scenario* scenario);

/* Runs a command (solve-elliptic, ..., run-scenario). Thread count never changes results. */
PSDO_API psdo_status psdo_run(const psdo_scenario* scenario, const char* command, int threads, psdo_report** out);
PSDO_API void psdo_report_free(psdo_report* report);

PSDO_API psdo_verdict psdo_report_verdict(const psdo_report* report);
/* Strings are owned by the report. */
PSDO_API const char* psdo_report_json(const psdo_report* report);
PSDO_API const char* psdo_report_csv(const psdo_report* report);
PSDO_API const char* psdo_report_summary(const psdo_report* report);
/* Writes report.json, report.csv and any field exports into dir. */
PSDO_API psdo_status psdo_report_write(const psdo_report* report, const char* dir);

/* Process exit code for a status: 0 ok, 2 config or validation, 1 otherwise. */
PSDO_API int psdo_status_exit_code(psdo_status status);
/* Process exit code for a verdict: 0 pass or not applicable, 3 fail. */
PSDO_API int psdo_verdict_exit_code(psdo_verdict verdict);

/* (i xi)^alpha on the principal branch; zero at xi = 0 when alpha > 0. */
PSDO_API psdo_status psdo_i_xi_power(double xi, double alpha, double* re, double* im);
/* Sampled minimum of |lambda + nu| / (|lambda| + |nu|) over the sector boundaries. */
PSDO_API psdo_status psdo_sector_sum_constant(double phi1, double phi2, size_t samples, double* out);
/* q-operator norm of a row-major complex n x n matrix given as interleaved re, im.
   Writes a lower and an upper bound; they coincide for q in {1, 2, inf}. */
PSDO_API psdo_status psdo_operator_norm(const double* entries, size_t n, double q, double* lower, double* upper);

#ifdef __cplusplus
}
#endif

#endif
