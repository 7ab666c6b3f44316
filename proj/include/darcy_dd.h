/*
  Copyright 2026 The darcy-dd Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef DARCY_DD_H
#define DARCY_DD_H

#include <stddef.h>
#include <stdint.h>

#if defined(DARCY_DD_BUILDING)
#define DARCY_DD_API __attribute__((visibility("default")))
#else
#define DARCY_DD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum darcy_status {
  DARCY_OK = 0,
  DARCY_INVALID_ARGUMENT = 1,
  DARCY_CONFIG = 2,
  DARCY_SPEC = 3,
  DARCY_TOPOLOGY = 4,
  DARCY_DATA = 5,
  DARCY_SOLVER = 6,
  DARCY_OUT_OF_MEMORY = 7,
  DARCY_IO = 8,
  DARCY_INTERNAL = 9
} darcy_status;

typedef enum darcy_formulation {
  DARCY_CONTINUOUS = 0,
  DARCY_DOMAIN_DECOMPOSITION = 1
} darcy_formulation;

typedef enum darcy_table {
  DARCY_TABLE_ERRORS = 0,
  DARCY_TABLE_TIMINGS,
  DARCY_TABLE_COND,
  DARCY_TABLE_SAMPLES,
  DARCY_TABLE_SPEEDUP,
  DARCY_TABLE_RATES,
  DARCY_TABLE_EQUIVALENCE,
  DARCY_TABLE_WARNINGS
} darcy_table;

typedef struct darcy_config darcy_config;
typedef struct darcy_result darcy_result;

typedef struct darcy_error_row {
  int formulation;
  int order;
  int k[3];
  int has_exact;
  double h;
  double l2_div_residual;
  double hdiv_error;
  double h1_error;
  double l2_pressure;
  double l2_velocity;
  double conservation;
  double mass_balance;
  uint64_t checksum;
} darcy_error_row;

typedef struct darcy_timing_row {
  int formulation;
  int order;
  int k[3];
  int out_of_memory;
  int repeats;
  double setup_s;
  double solve_s;
  double recover_s;
  double total_s;
  double total_mean_s;
  int64_t dof_u;
  int64_t dof_p;
  int64_t dof_lambda;
  double stored_entries;
} darcy_timing_row;

typedef struct darcy_cond_row {
  int formulation;
  int order;
  int k[3];
  double cond_pressure; /* NaN when not computed */
  double cond_pressure_eliminated;
  double cond_lambda;
} darcy_cond_row;

typedef struct darcy_sample_row {
  int formulation;
  int order;
  int k[3];
  int64_t index;
  double x[3];
  double p;
  double u[3];
} darcy_sample_row;

typedef struct darcy_speedup_row {
  int order;
  int k[3];
  double continuous_s; /* NaN when the continuous solve exceeded the budget */
  double dd_s;
  double ratio;
} darcy_speedup_row;

typedef struct darcy_rate_row {
  int formulation;
  int order;
  const char* metric; /* owned by the result */
  double least_squares;
} darcy_rate_row;

typedef struct darcy_equivalence_row {
  int order;
  int k[3];
  double flux;
  double pressure;
  double samples;
} darcy_equivalence_row;

DARCY_DD_API const char* darcy_version(void);
DARCY_DD_API const char* darcy_status_name(darcy_status status);
/* Message of the last failed call on this thread ("" if none). */
DARCY_DD_API const char* darcy_last_error(void);

DARCY_DD_API darcy_status darcy_config_create(darcy_config** out);
DARCY_DD_API void darcy_config_destroy(darcy_config* config);
/* Keys: case, formulation, N, K, K1, K2, decomp, perm-file, anisotropic,
   sweep, repeat, threads, out, seed, mem-budget, quad-bump, cond,
   sample-resolution. */
DARCY_DD_API darcy_status darcy_config_set(darcy_config* config, const char* key,
                                           const char* value);
/* Configuration echo line written at the top of each report. */
DARCY_DD_API const char* darcy_config_echo(const darcy_config* config);

DARCY_DD_API darcy_status darcy_run(const darcy_config* config, darcy_result** out);
DARCY_DD_API void darcy_result_destroy(darcy_result* result);
DARCY_DD_API darcy_status darcy_result_write(const darcy_result* result, const char* out_dir);
DARCY_DD_API size_t darcy_result_count(const darcy_result* result, darcy_table table);

DARCY_DD_API darcy_status darcy_result_error(const darcy_result* r, size_t i, darcy_error_row* out);
DARCY_DD_API darcy_status darcy_result_timing(const darcy_result* r, size_t i,
                                              darcy_timing_row* out);
DARCY_DD_API darcy_status darcy_result_cond(const darcy_result* r, size_t i, darcy_cond_row* out);
DARCY_DD_API darcy_status darcy_result_sample(const darcy_result* r, size_t i,
                                              darcy_sample_row* out);
DARCY_DD_API darcy_status darcy_result_speedup(const darcy_result* r, size_t i,
                                               darcy_speedup_row* out);
DARCY_DD_API darcy_status darcy_result_rate(const darcy_result* r, size_t i, darcy_rate_row* out);
DARCY_DD_API darcy_status darcy_result_equivalence(const darcy_result* r, size_t i,
                                                   darcy_equivalence_row* out);
DARCY_DD_API darcy_status darcy_result_warning(const darcy_result* r, size_t i, const char** out);

/* Writes the volume incidence (divergence) matrix in Matrix Market format.
   nz == 0 selects the 2D nx x ny lowest-order grid; otherwise the 3D mesh of
   nx x ny x nz elements of the given order. */
DARCY_DD_API darcy_status darcy_dump_incidence(int nx, int ny, int nz, int order,
                                               const char* path);

/* FNV-1a 64 checksum of a permeability file, after validating its contents. */
DARCY_DD_API darcy_status darcy_spe10_checksum(const char* path, int anisotropic,
                                               uint64_t* out);

/* Reads two timings.csv files and writes the speed-up table. */
DARCY_DD_API darcy_status darcy_speedup_files(const char* continuous_csv, const char* dd_csv,
                                              const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* DARCY_DD_H */
