// SPDX-License-Identifier: Apache-2.0
//
// riwf: robust iterative water-filling for multi-user power allocation
// Copyright (C) 2026 The riwf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface to the riwf power-allocation library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return riwf_status; on failure the
 * thread-local message from riwf_last_error() describes the cause. Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with riwf_string_free.
 */

#ifndef RIWF_H
#define RIWF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RIWF_BUILDING)
#    define RIWF_API __declspec(dllexport)
#  else
#    define RIWF_API __declspec(dllimport)
#  endif
#else
#  define RIWF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum riwf_status {
    RIWF_OK = 0,
    RIWF_ERR_INVALID_ARGUMENT = 1,
    RIWF_ERR_INVALID_CHANNEL = 2,
    RIWF_ERR_PARSE = 3,
    RIWF_ERR_IO = 4,
    RIWF_ERR_SIZE = 5,
    RIWF_ERR_INTERNAL = 99
} riwf_status;

typedef enum riwf_mode {
    RIWF_MODE_NOMINAL = 0,
    RIWF_MODE_WORST_CASE = 1,
    RIWF_MODE_PROBABILISTIC = 2
} riwf_mode;

typedef enum riwf_schedule_kind {
    RIWF_SCHEDULE_SEQUENTIAL = 0,
    RIWF_SCHEDULE_SIMULTANEOUS = 1,
    RIWF_SCHEDULE_ASYNCHRONOUS = 2
} riwf_schedule_kind;

typedef enum riwf_init_kind {
    RIWF_INIT_ZERO = 0,
    RIWF_INIT_UNIFORM = 1,
    RIWF_INIT_CUSTOM = 2
} riwf_init_kind;

typedef struct riwf_scenario riwf_scenario;
typedef struct riwf_report riwf_report;

typedef struct riwf_generator_params {
    size_t users;
    size_t subchannels;
    double direct_lo, direct_hi;
    double cross_lo, cross_hi;
    double noise_lo, noise_hi;
    int fading;
    double p_max;
    double mask;
    uint64_t seed;
} riwf_generator_params;

typedef struct riwf_schedule_params {
    riwf_schedule_kind kind;
    double update_probability;
    size_t max_staleness;
    uint64_t seed;
} riwf_schedule_params;

typedef struct riwf_run_params {
    riwf_init_kind init;
    const double* custom_init; /* M*K row-major, used with RIWF_INIT_CUSTOM */
    double tol;
    size_t max_iter;
    int record_trajectory;
} riwf_run_params;

typedef struct riwf_sweep_params {
    riwf_generator_params generator;
    riwf_mode mode;
    double delta0;
    size_t realizations;
    uint64_t seed;
    riwf_schedule_params schedule;
    riwf_run_params run;
    unsigned jobs;
} riwf_sweep_params;

RIWF_API const char* riwf_version(void);
RIWF_API const char* riwf_last_error(void);
RIWF_API void riwf_string_free(char* s);

/* Defaults: low-interference 8x64 draw; sequential schedule; zero init,
 * tol 1e-8, max_iter 1e4; sweep with 20 worst-case realizations. */
RIWF_API void riwf_generator_params_default(riwf_generator_params* out);
RIWF_API void riwf_generator_params_high_interference(riwf_generator_params* out);
RIWF_API void riwf_schedule_params_default(riwf_schedule_params* out);
RIWF_API void riwf_run_params_default(riwf_run_params* out);
RIWF_API void riwf_sweep_params_default(riwf_sweep_params* out);

/* Scenarios */
RIWF_API riwf_status riwf_scenario_load(const char* path, riwf_scenario** out);
RIWF_API riwf_status riwf_scenario_from_json(const char* json, riwf_scenario** out);
RIWF_API riwf_status riwf_scenario_generate(const riwf_generator_params* params, riwf_scenario** out);
RIWF_API riwf_status riwf_scenario_table2(riwf_scenario** out);
RIWF_API riwf_status riwf_scenario_clone(const riwf_scenario* sc, riwf_scenario** out);
RIWF_API void riwf_scenario_free(riwf_scenario* sc);
RIWF_API riwf_status riwf_scenario_dims(const riwf_scenario* sc, size_t* users, size_t* subchannels);
/* Replaces the uncertainty model with a uniform eps on every (user, sub-channel). */
RIWF_API riwf_status riwf_scenario_set_uniform_uncertainty(riwf_scenario* sc, riwf_mode mode, double eps,
                                                           double delta0);
RIWF_API riwf_status riwf_scenario_to_json(const riwf_scenario* sc, char** out);

/* Best response of one user against `profile` (M*K row-major). Writes K powers. */
RIWF_API riwf_status riwf_best_response(const riwf_scenario* sc, size_t user, const double* profile, double* out_power,
                                        double* out_water_level);
RIWF_API riwf_status riwf_fixed_point_residual(const riwf_scenario* sc, const double* profile, double* out);

/* Dynamics */
RIWF_API riwf_status riwf_run(const riwf_scenario* sc, const riwf_schedule_params* schedule,
                              const riwf_run_params* run, riwf_report** out);
RIWF_API void riwf_report_free(riwf_report* r);
RIWF_API int riwf_report_converged(const riwf_report* r);
RIWF_API size_t riwf_report_iterations(const riwf_report* r);
RIWF_API double riwf_report_residual(const riwf_report* r);
RIWF_API double riwf_report_social_utility(const riwf_report* r);
RIWF_API double riwf_report_robust_social_utility(const riwf_report* r);
RIWF_API double riwf_report_orthogonality_index(const riwf_report* r);
/* Copies the M*K converged profile into `out` (capacity `len` doubles). */
RIWF_API riwf_status riwf_report_profile(const riwf_report* r, double* out, size_t len);
RIWF_API riwf_status riwf_report_to_json(const riwf_report* r, char** out);
/* summary != 0: iteration,residual,social_utility; else iteration,user,subchannel,power. */
RIWF_API riwf_status riwf_report_trajectory_csv(const riwf_report* r, int summary, char** out);

/* Certificates. reference_profile may be NULL (all-mask profile). Output is
 * a JSON object with "rne_uniqueness" and "async_convergence" entries. */
RIWF_API riwf_status riwf_check_certificates(const riwf_scenario* sc, const double* reference_profile, char** out_json);

/* Sweeps; output is CSV. */
RIWF_API riwf_status riwf_epsilon_sweep(const riwf_sweep_params* params, const double* eps_grid, size_t n,
                                        char** out_csv);
RIWF_API riwf_status riwf_delta_sweep(const riwf_sweep_params* params, double eps, const double* delta_grid, size_t n,
                                      char** out_csv);

/* Reproduction presets: table3, table4, fig1, fig2, fig3, fig4.
 * out_csv receives NULL for table presets. *all_must_passed is 1 or 0. */
RIWF_API riwf_status riwf_reproduce(const char* preset, size_t realizations, uint64_t seed, unsigned jobs,
                                    char** out_json, char** out_csv, int* all_must_passed);

#ifdef __cplusplus
}
#endif

#endif
