/* Copyright 2026 The gemsim Authors
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

/* C interface to the gemsim shared library.
 *
 * Every function returns a gem_status. On failure the message is available
 * from gem_last_error() on the same thread until the next failing call.
 * Handles are opaque and must be released with the matching *_free call.
 */

#ifndef GEMSIM_H
#define GEMSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GEM_API __declspec(dllexport)
#else
#define GEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gem_status {
  GEM_OK = 0,
  GEM_ERR_INVALID_ARGUMENT = 1,
  GEM_ERR_OUT_OF_RANGE = 2,
  GEM_ERR_NUMERICAL = 3,
  GEM_ERR_BUDGET_EXCEEDED = 4,
  GEM_ERR_CONFIG = 5,
  GEM_ERR_IO = 6,
  GEM_ERR_INTERNAL = 7,
  GEM_ERR_NULL_POINTER = 8
} gem_status;

typedef enum gem_reflection_phase {
  GEM_PHASE_SYMMETRIC = 0,
  GEM_PHASE_REAL = 1
} gem_reflection_phase;

typedef struct gem_params {
  double g;
  double N;
  double eta;
  double gamma;
  double z0;
} gem_params;

typedef struct gem_grid {
  size_t nz;
  size_t nt;
  double t_min;
  double t_max;
} gem_grid;

typedef struct gem_pulse gem_pulse;
typedef struct gem_result gem_result;

GEM_API const char* gem_version(void);
GEM_API const char* gem_last_error(void);
GEM_API const char* gem_status_name(gem_status status);

/* Defaults: g = 1, N = 0, eta = 1, gamma = 0, z0 = 60. */
GEM_API gem_params gem_default_params(void);
GEM_API gem_status gem_beta(const gem_params* params, double* beta);

GEM_API gem_status gem_pulse_gaussian(double center, double sigma, double amp_re,
                                      double amp_im, gem_pulse** out);
GEM_API gem_status gem_pulse_raised_cosine(double center, double half_width, double amp_re,
                                           double amp_im, gem_pulse** out);
GEM_API void gem_pulse_free(gem_pulse* pulse);
GEM_API gem_status gem_pulse_eval(const gem_pulse* pulse, double t, double* re, double* im);
GEM_API gem_status gem_pulse_energy(const gem_pulse* pulse, double* energy);

/* `aux` may be NULL. `flips` may be NULL when n_flips is 0. */
GEM_API gem_status gem_simulate(const gem_params* params, const gem_grid* grid,
                                const gem_pulse* input, const double* flips, size_t n_flips,
                                const gem_pulse* aux, gem_result** out);
GEM_API void gem_result_free(gem_result* result);
GEM_API gem_status gem_result_length(const gem_result* result, size_t* n);
/* Copies min(capacity, length) samples of E(+z0, t). Any output may be NULL. */
GEM_API gem_status gem_result_output(const gem_result* result, double* times, double* re,
                                     double* im, size_t capacity);
GEM_API gem_status gem_result_energies(const gem_result* result, double* input,
                                       double* transmitted, double* residual);
GEM_API gem_status gem_result_echo_count(const gem_result* result, size_t* n);
GEM_API gem_status gem_result_echo_energy(const gem_result* result, size_t k, double* energy);
GEM_API gem_status gem_result_efficiency(const gem_result* result, double t_start,
                                         double t_end, double* efficiency);
GEM_API gem_status gem_result_echo_fidelity(const gem_result* result, const gem_pulse* input,
                                            double flip_time, double* fidelity);

GEM_API gem_status gem_gamma_imag(double y, double* re, double* im);

GEM_API gem_status gem_single_memory_efficiency(double beta, double* out);
GEM_API gem_status gem_multiswitch_echo(double beta, int k, double* out);
GEM_API gem_status gem_transverse_efficiency(double beta, int cells, double* out);
GEM_API gem_status gem_finite_cell_echo(double beta, int cells, int p, double* out);
GEM_API gem_status gem_thin_limit_echo(double d, int p, double* out);
GEM_API gem_status gem_path_sum(int cells, int flips, double beta, gem_reflection_phase phase,
                                int p, uint64_t budget, double* energy, uint64_t* paths);

/* Runs a CLI command ("simulate", "analytic", "network", "fig4", "fig5",
 * "converge", "series") on a configuration file, printing the summary to
 * stdout. `out_dir` may be NULL to use the directory named in the config.
 * *exit_code is 0 when every check passes, 1 when a check fails and 2 on a
 * configuration error. */
GEM_API gem_status gem_run_command(const char* command, const char* config_path,
                                   const char* out_dir, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* GEMSIM_H */
