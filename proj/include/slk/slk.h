/*
   Copyright 2026 The sublevel-kit Authors

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

/* C interface to the sublevel-kit library. All functions returning
 * slk_status leave a message retrievable with slk_last_error() on failure.
 * Handles are opaque and must be released with the matching destroy call. */

#ifndef SLK_SLK_H
#define SLK_SLK_H

#include <stddef.h>
#include <stdint.h>

#if defined(SLK_BUILDING_LIBRARY)
#define SLK_API __attribute__((visibility("default")))
#else
#define SLK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slk_status {
    SLK_OK = 0,
    SLK_ERR_DOMAIN = 1,
    SLK_ERR_NON_DIFFERENTIABLE = 2,
    SLK_ERR_LEVEL = 3,
    SLK_ERR_PARAMETER = 4,
    SLK_ERR_UNKNOWN_FIELD = 5,
    SLK_ERR_BUDGET = 6,
    SLK_ERR_CRITICAL_PROXIMITY = 7,
    SLK_ERR_THIN_SHELL = 8,
    SLK_ERR_INTEGRAND = 9,
    SLK_ERR_DECOMPOSITION = 10,
    SLK_ERR_SANDWICH = 11,
    SLK_ERR_PRECONDITION = 12,
    SLK_ERR_IO = 13,
    SLK_ERR_NULL_ARGUMENT = 100,
    SLK_ERR_BUFFER_TOO_SMALL = 101,
    SLK_ERR_INTERNAL = 102
} slk_status;

typedef enum slk_fiber_method { SLK_FIBER_MESH = 0, SLK_FIBER_SHELL_MC = 1 } slk_fiber_method;
typedef enum slk_volume_method { SLK_VOLUME_GRID = 0, SLK_VOLUME_MC = 1 } slk_volume_method;

typedef struct slk_field slk_field;
typedef struct slk_run_config slk_run_config;

typedef struct slk_budget {
    int64_t samples;
    int32_t resolution_2d;
    int32_t resolution_3d;
    int32_t resolution_nd;
    uint64_t seed;
} slk_budget;

typedef struct slk_estimate {
    double level;
    double value;
    double error;
} slk_estimate;

typedef struct slk_witness {
    double level;
    double xi[8];
    int32_t dim;
    double grad_norm_at_xi;
    double target_ratio;
    double residual;
    double area;
    double j_value;
} slk_witness;

SLK_API const char* slk_version(void);
SLK_API const char* slk_last_error(void);
SLK_API const char* slk_status_string(slk_status status);
SLK_API slk_budget slk_default_budget(void);
SLK_API void slk_set_threads(int threads);

/* Number of corpus identifiers; slk_corpus_id returns NULL out of range. */
SLK_API size_t slk_corpus_size(void);
SLK_API const char* slk_corpus_id(size_t index);

SLK_API slk_status slk_field_create(const char* id, slk_field** out);
SLK_API void slk_field_destroy(slk_field* field);
SLK_API int slk_field_dim(const slk_field* field);
SLK_API double slk_field_t_max(const slk_field* field);
SLK_API slk_status slk_field_evaluate(const slk_field* field, const double* x, double* value);
SLK_API slk_status slk_field_gradient(const slk_field* field, const double* x, double* grad);
/* Oracle values; SLK_ERR_PRECONDITION when the field has no such oracle. */
SLK_API slk_status slk_field_oracle_volume(const slk_field* field, double t, double* value);
SLK_API slk_status slk_field_oracle_area(const slk_field* field, double t, double* value);

SLK_API slk_status slk_volume(const slk_field* field, double t, slk_volume_method method,
                              const slk_budget* budget, slk_estimate* out);
SLK_API slk_status slk_area(const slk_field* field, double t, slk_fiber_method method,
                            const slk_budget* budget, slk_estimate* out);
/* density: "one", "zero", "x0", "bump" or "tilted_bump" (bump support [t_lo, t_hi]). */
SLK_API slk_status slk_gl_integral(const slk_field* field, double t, const char* density,
                                   double t_lo, double t_hi, slk_fiber_method method,
                                   const slk_budget* budget, slk_estimate* out);
SLK_API slk_status slk_mean_value_point(const slk_field* field, double t,
                                        const slk_budget* budget, slk_witness* out);

SLK_API slk_status slk_run_config_create(slk_run_config** out);
SLK_API void slk_run_config_destroy(slk_run_config* config);
/* Keys: command, field, levels, budget, seed, threads, out, format, density,
 * method, filter. */
SLK_API slk_status slk_run_config_set(slk_run_config* config, const char* key, const char* value);
SLK_API slk_status slk_run_config_load_file(slk_run_config* config, const char* path);
/* Returns the process exit code: 0 pass, 1 check failure, 2 usage error.
 * The summary message is available from slk_last_error(). */
SLK_API int slk_run(const slk_run_config* config);

#ifdef __cplusplus
}
#endif

#endif
