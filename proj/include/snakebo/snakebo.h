// Copyright 2026 The snakebo Authors. All Rights Reserved.
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
// =============================================================================

#ifndef SNAKEBO_SNAKEBO_H_
#define SNAKEBO_SNAKEBO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SNAKEBO_BUILDING_LIBRARY)
#    define SNAKEBO_API __declspec(dllexport)
#  else
#    define SNAKEBO_API __declspec(dllimport)
#  endif
#else
#  define SNAKEBO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snk_status {
  SNK_OK = 0,
  SNK_ERR_INVALID_ARGUMENT = 1,
  SNK_ERR_UNKNOWN_NAME = 2,
  SNK_ERR_IO = 3,
  SNK_ERR_NUMERICAL = 4,
  SNK_ERR_RUNTIME = 5
} snk_status;

typedef struct snk_config snk_config;
typedef struct snk_benchmark snk_benchmark;
typedef struct snk_run snk_run;

SNAKEBO_API const char* snk_version(void);
/* Message of the last failed call on this thread; empty after success. */
SNAKEBO_API const char* snk_last_error(void);

/* Experiment configuration: flat key/value pairs. */
SNAKEBO_API snk_status snk_config_create(snk_config** out);
SNAKEBO_API void snk_config_destroy(snk_config* cfg);
SNAKEBO_API snk_status snk_config_load_file(snk_config* cfg, const char* path);
SNAKEBO_API snk_status snk_config_set(snk_config* cfg, const char* key, const char* value);
/* Copies the value including the terminator when it fits; *len receives strlen. */
SNAKEBO_API snk_status snk_config_get(const snk_config* cfg, const char* key, char* buf,
                                      size_t cap, size_t* len);

/* Runs the configured grid; writes CSVs and summary.json under the "out" key. */
SNAKEBO_API snk_status snk_experiment_run(const snk_config* cfg, size_t* n_files);

/* mode: "stationary" or "no-stationary". estimates must hold `repetitions`
 * values. out_dir may be NULL; otherwise escape.json is written there. */
SNAKEBO_API snk_status snk_escape_run(const char* mode, int points, int samples, int repetitions,
                                      uint64_t seed, double* estimates, const char* out_dir);

/* Reads the run CSVs in in_dir and writes SVG plots to out_dir. */
SNAKEBO_API snk_status snk_plot(const char* in_dir, const char* out_dir, size_t* n_files);

SNAKEBO_API snk_status snk_benchmark_create(const char* name, snk_benchmark** out);
SNAKEBO_API void snk_benchmark_destroy(snk_benchmark* b);
SNAKEBO_API int snk_benchmark_dim(const snk_benchmark* b);
/* x in normalised coordinates [0,1]^d. */
SNAKEBO_API snk_status snk_benchmark_eval(const snk_benchmark* b, const double* x, double* y);
SNAKEBO_API snk_status snk_benchmark_optimum(const snk_benchmark* b, double* f_star);

SNAKEBO_API snk_status snk_run_single(const snk_config* cfg, const char* function,
                                      const char* method, uint64_t seed, snk_run** out);
SNAKEBO_API size_t snk_run_length(const snk_run* run);
SNAKEBO_API int snk_run_dim(const snk_run* run);
/* Any output pointer may be NULL. x receives dim values; regret and y refer to
 * the first objective. */
SNAKEBO_API snk_status snk_run_row(const snk_run* run, size_t index, double* x, double* y,
                                   double* simple_regret, double* step_cost, double* cum_cost);
SNAKEBO_API snk_status snk_run_write_csv(const snk_run* run, const char* path);
SNAKEBO_API void snk_run_destroy(snk_run* run);

SNAKEBO_API double snk_response_cost_dim(double delta, double alpha, double beta, double gamma);
SNAKEBO_API snk_status snk_euclidean_cost(const double* a, const double* b, size_t d, double* out);

/* points: n x d row-major. order_out receives n point indices. */
SNAKEBO_API snk_status snk_solve_tsp(const double* points, size_t n, size_t d, const double* source,
                                     uint64_t seed, size_t* order_out, double* cost_out);

/* batch: n x d, queried: q x d, out: (n - q) x d, all row-major. */
SNAKEBO_API snk_status snk_point_deletion(const double* batch, size_t n, const double* queried,
                                          size_t q, size_t d, double epsilon, uint64_t seed,
                                          double* out);

SNAKEBO_API snk_status snk_full_escape_probability(double p, int budget, int t, double* out);
SNAKEBO_API snk_status snk_predicted_escape_iteration(double p_hat, int budget, int* out);

#ifdef __cplusplus
}
#endif

#endif  // SNAKEBO_SNAKEBO_H_
