// Copyright 2026 The nscq Authors
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

/* C interface to the nscq library. All handles are opaque; every call
 * returns an nscq_status and, on failure, leaves a message retrievable with
 * nscq_last_error() on the calling thread. Strings handed out by the
 * library must be released with nscq_string_free(). */

#ifndef NSCQ_NSCQ_H
#define NSCQ_NSCQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NSCQ_BUILDING_LIBRARY)
#    define NSCQ_API __declspec(dllexport)
#  else
#    define NSCQ_API __declspec(dllimport)
#  endif
#else
#  define NSCQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nscq_status {
    NSCQ_OK = 0,
    NSCQ_ERR_DOMAIN = 1,       /* argument outside its valid range */
    NSCQ_ERR_STRUCTURAL = 2,   /* malformed graph, circuit or distribution */
    NSCQ_ERR_CAPACITY = 3,     /* instance too large for the requested backend */
    NSCQ_ERR_ENCODING = 4,     /* a value does not fit its register */
    NSCQ_ERR_PARSE = 5,
    NSCQ_ERR_IO = 6,
    NSCQ_ERR_NULL_ARGUMENT = 7,
    NSCQ_ERR_INTERNAL = 8
} nscq_status;

typedef enum nscq_backend {
    NSCQ_BACKEND_GATE = 0,
    NSCQ_BACKEND_FAST = 1,
    NSCQ_BACKEND_NOISY = 2
} nscq_backend;

typedef enum nscq_format {
    NSCQ_FORMAT_CSV = 0,
    NSCQ_FORMAT_JSON = 1,
    NSCQ_FORMAT_SVG = 2
} nscq_format;

typedef enum nscq_verdict {
    NSCQ_VERDICT_HOLDS = 0,
    NSCQ_VERDICT_FAILS = 1,
    NSCQ_VERDICT_INCONCLUSIVE = 2
} nscq_verdict;

typedef struct nscq_instance nscq_instance;

/* Message for the last failed call on this thread ("" if none). */
NSCQ_API const char *nscq_last_error(void);
NSCQ_API const char *nscq_status_name(nscq_status status);
NSCQ_API void nscq_string_free(char *text);

/* ---- instances ---- */

typedef struct nscq_generate_options {
    int nodes;              /* at least 4 */
    uint64_t seed;
    int cycle_length;       /* default 2 */
    uint64_t threshold;     /* K, default 1 */
    int general_mode;       /* 0: binary congestion patterns, 1: periodic tables */
    uint32_t max_delay;     /* general mode only, default 3 */
} nscq_generate_options;

NSCQ_API void nscq_generate_options_init(nscq_generate_options *options);

typedef struct nscq_instance_info {
    int nodes;
    size_t arcs;
    int cycle_length;
    uint64_t threshold;
    int general_mode;
    uint64_t search_space;     /* 0 when it does not fit 62 bits */
    uint64_t max_total_delay;
    int total_qubits;          /* gate-level register layout */
} nscq_instance_info;

NSCQ_API nscq_status nscq_instance_generate(const nscq_generate_options *options,
                                            nscq_instance **out);
NSCQ_API nscq_status nscq_instance_load(const char *path, nscq_instance **out);
NSCQ_API nscq_status nscq_instance_parse(const char *json_text, nscq_instance **out);
NSCQ_API nscq_status nscq_instance_save(const nscq_instance *instance, const char *path);
NSCQ_API nscq_status nscq_instance_to_json(const nscq_instance *instance, char **out);
NSCQ_API nscq_status nscq_instance_set_threshold(nscq_instance *instance, uint64_t threshold);
NSCQ_API nscq_status nscq_instance_info_get(const nscq_instance *instance,
                                            nscq_instance_info *out);
NSCQ_API void nscq_instance_free(nscq_instance *instance);

/* ---- single runs ---- */

typedef struct nscq_run_options {
    nscq_backend backend;   /* default fast */
    int iterations;         /* default 1 */
    int sample;             /* nonzero: also draw `shots` measurements */
    uint64_t shots;         /* default 1024 */
    uint64_t seed;
    double noise_rate;
    int trajectories;       /* default 100 */
} nscq_run_options;

NSCQ_API void nscq_run_options_init(nscq_run_options *options);

/* One sweep row for the instance, rendered as CSV (header + row) or JSON. */
NSCQ_API nscq_status nscq_run(const nscq_instance *instance, const nscq_run_options *options,
                              nscq_format format, int include_wall_time, char **out);

/* ---- sweeps ---- */

typedef struct nscq_sweep_config {
    const int *nodes;
    size_t num_nodes;
    const uint64_t *thresholds;
    size_t num_thresholds;
    const int *iterations;
    size_t num_iterations;
    int seeds_per_size;
    uint64_t master_seed;
    nscq_run_options run;
    int workers;            /* 0: one per hardware thread */
} nscq_sweep_config;

/* Fills the defaults; the range pointers refer to static storage. */
NSCQ_API void nscq_sweep_config_init(nscq_sweep_config *config);
NSCQ_API nscq_status nscq_sweep(const nscq_sweep_config *config, nscq_format format,
                                int include_wall_time, char **out);

/* ---- counting ---- */

typedef struct nscq_count_options {
    int counting_qubits;    /* default 7 */
    uint64_t shots;         /* default 1024 */
    uint64_t seed;
    double alpha;           /* used when delta is 0; default 0.25 */
    uint64_t delta;         /* explicit robustness count, 0: derive from alpha */
} nscq_count_options;

typedef struct nscq_count_result {
    double m_hat;
    uint64_t outcome;
    int counting_qubits;
    double error_bound;
    uint64_t search_space;
    uint64_t delta;
    double margin;
    nscq_verdict verdict;
    uint64_t exact_count;          /* brute-force M */
    nscq_verdict classical_verdict;
} nscq_count_result;

NSCQ_API void nscq_count_options_init(nscq_count_options *options);
NSCQ_API nscq_status nscq_count(const nscq_instance *instance, const nscq_count_options *options,
                                nscq_count_result *out);

/* ---- resources ---- */

/* Register breakdown, gate counts and depths as a JSON object. */
NSCQ_API nscq_status nscq_resources(const nscq_instance *instance, char **out);

/* ---- verification ---- */

typedef struct nscq_verify_options {
    int instances;          /* default 30 */
    uint64_t seed;          /* default 2024 */
    int max_nodes;          /* default 6 */
    int max_iterations;     /* default 10 */
} nscq_verify_options;

NSCQ_API void nscq_verify_options_init(nscq_verify_options *options);
/* `passed` is set to 1 when every check passed; `report` gets one line per check. */
NSCQ_API nscq_status nscq_verify(const nscq_verify_options *options, int *passed, char **report);

#ifdef __cplusplus
}
#endif

#endif /* NSCQ_NSCQ_H */
