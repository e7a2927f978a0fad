// Copyright 2026 The fasrsma Authors
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

/* C interface to the fasrsma library. Every object is an opaque handle that
 * the caller releases with the matching *_free function. Functions return a
 * status code; on failure fasrsma_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller and
 * released with fasrsma_string_free(). */

#ifndef FASRSMA_H
#define FASRSMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FASRSMA_API __declspec(dllexport)
#elif defined(__GNUC__)
#define FASRSMA_API __attribute__((visibility("default")))
#else
#define FASRSMA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fasrsma_status {
    FASRSMA_OK = 0,
    FASRSMA_ERR_INVALID_ARGUMENT = 1,
    FASRSMA_ERR_CONFIG = 2,
    FASRSMA_ERR_NUMERICAL = 3, /* broken numerical contract */
    FASRSMA_ERR_IO = 4,
    FASRSMA_ERR_UNSUPPORTED = 5,
    FASRSMA_ERR_INTERNAL = 6
} fasrsma_status;

typedef enum fasrsma_run_mode {
    FASRSMA_RUN_ANALYTIC = 0,
    FASRSMA_RUN_MONTE_CARLO = 1,
    FASRSMA_RUN_BOTH = 2
} fasrsma_run_mode;

typedef struct fasrsma_model fasrsma_model;           /* fitted block-correlation model */
typedef struct fasrsma_rsma fasrsma_rsma;             /* operating point */
typedef struct fasrsma_sim fasrsma_sim;               /* simulation estimate */
typedef struct fasrsma_experiment fasrsma_experiment; /* experiment configuration */

/* Gauss-Chebyshev settings: one cutoff and node count per integral. */
typedef struct fasrsma_quadrature {
    double outage_cutoff;
    int outage_nodes;
    double outer_cutoff;
    int outer_nodes;
    double inner_cutoff;
    int inner_nodes;
} fasrsma_quadrature;

typedef struct fasrsma_sim_user {
    double outage;
    double outage_stderr;
    double outage_intersection;
    double private_capacity;
    double private_stderr;
    int feasible;
    int unresolved; /* fewer than 10 outage events */
} fasrsma_sim_user;

typedef struct fasrsma_sim_summary {
    uint64_t trials;
    double common_capacity; /* NaN for NOMA */
    double common_stderr;
    double sum_capacity;
    double sum_stderr;
} fasrsma_sim_summary;

FASRSMA_API const char* fasrsma_version(void);
FASRSMA_API const char* fasrsma_last_error(void);
/* Dotted configuration key of the last FASRSMA_ERR_CONFIG, or "". */
FASRSMA_API const char* fasrsma_last_error_field(void);
FASRSMA_API void fasrsma_string_free(char* text);

/* Default quadrature for mean channel gain eta0. */
FASRSMA_API fasrsma_status fasrsma_quadrature_defaults(double eta0, fasrsma_quadrature* out);

/* Models. strategy is "vbc", "cbc" or "cbc:<rho>". num_blocks <= 0 picks the
 * block count that minimises the eigenvalue distance. */
FASRSMA_API fasrsma_status fasrsma_model_fit(int ports, double aperture, double eta0, const char* strategy,
                                             int num_blocks, fasrsma_model** out);
FASRSMA_API fasrsma_status fasrsma_model_from_blocks(const int* sizes, const double* rhos, size_t count,
                                                     double eta0, fasrsma_model** out);
FASRSMA_API fasrsma_status fasrsma_model_read(const char* document, fasrsma_model** out);
FASRSMA_API fasrsma_status fasrsma_model_write(const fasrsma_model* model, char** document);
FASRSMA_API void fasrsma_model_free(fasrsma_model* model);
FASRSMA_API fasrsma_status fasrsma_model_block_count(const fasrsma_model* model, size_t* count);
FASRSMA_API fasrsma_status fasrsma_model_block(const fasrsma_model* model, size_t index, int* size, double* rho);
/* NaN for models built from blocks. */
FASRSMA_API fasrsma_status fasrsma_model_distance(const fasrsma_model* model, double* distance);

/* Operating points. private_split has one share per user and sums to one.
 * Threshold arrays hold one value per user or a single shared value. */
FASRSMA_API fasrsma_status fasrsma_rsma_create(double snr_db, double t_common, const double* private_split,
                                               size_t users, const double* common_threshold_db,
                                               size_t common_count, const double* private_threshold_db,
                                               size_t private_count, fasrsma_rsma** out);
FASRSMA_API void fasrsma_rsma_free(fasrsma_rsma* point);
FASRSMA_API fasrsma_status fasrsma_rsma_users(const fasrsma_rsma* point, size_t* users);

/* Closed forms. Arrays have one entry per user; quad may be NULL for the
 * defaults of the model's mean gain. */
FASRSMA_API fasrsma_status fasrsma_outage(const fasrsma_model* model, const fasrsma_rsma* point,
                                          const fasrsma_quadrature* quad, double* outage, size_t users);
FASRSMA_API fasrsma_status fasrsma_capacity(const fasrsma_model* model, const fasrsma_rsma* point,
                                            const fasrsma_quadrature* quad, double* common,
                                            double* private_capacity, size_t users, double* sum);
FASRSMA_API fasrsma_status fasrsma_outage_tas(const fasrsma_rsma* point, double eta0, double* outage, size_t users);
FASRSMA_API fasrsma_status fasrsma_capacity_tas(const fasrsma_rsma* point, double eta0,
                                                const fasrsma_quadrature* quad, double* common,
                                                double* private_capacity, size_t users, double* sum);

/* Monte Carlo over the Jakes channel. scheme is "fas-rsma" or "tas-rsma".
 * workers = 0 uses every hardware thread; results do not depend on it. */
FASRSMA_API fasrsma_status fasrsma_simulate(int ports, double aperture, double eta0, const char* scheme,
                                            const fasrsma_rsma* point, uint64_t trials, uint64_t seed,
                                            unsigned workers, fasrsma_sim** out);
/* Two-user NOMA; scheme is "fas-noma" or "tas-noma". */
FASRSMA_API fasrsma_status fasrsma_simulate_noma(int ports, double aperture, double eta0, const char* scheme,
                                                 double snr_db, const double split[2], double threshold_db,
                                                 uint64_t trials, uint64_t seed, unsigned workers,
                                                 fasrsma_sim** out);
FASRSMA_API void fasrsma_sim_free(fasrsma_sim* sim);
FASRSMA_API fasrsma_status fasrsma_sim_users(const fasrsma_sim* sim, size_t* users);
FASRSMA_API fasrsma_status fasrsma_sim_user_result(const fasrsma_sim* sim, size_t user, fasrsma_sim_user* out);
FASRSMA_API fasrsma_status fasrsma_sim_summary_result(const fasrsma_sim* sim, fasrsma_sim_summary* out);

/* Experiments. */
FASRSMA_API fasrsma_status fasrsma_experiment_parse(const char* document, fasrsma_experiment** out);
FASRSMA_API fasrsma_status fasrsma_experiment_load(const char* path, fasrsma_experiment** out);
FASRSMA_API void fasrsma_experiment_free(fasrsma_experiment* experiment);
/* Applies one "key = value" setting and revalidates. */
FASRSMA_API fasrsma_status fasrsma_experiment_set(fasrsma_experiment* experiment, const char* key,
                                                  const char* value);
FASRSMA_API fasrsma_status fasrsma_experiment_canonical(const fasrsma_experiment* experiment, char** text);
FASRSMA_API fasrsma_status fasrsma_experiment_output_dir(const fasrsma_experiment* experiment, char** path);
/* Block-model documents for every (N, W, strategy), separated by blank lines. */
FASRSMA_API fasrsma_status fasrsma_experiment_fit(const fasrsma_experiment* experiment, char** documents);
/* Runs the sweep and writes CSV files plus manifest.txt to the output
 * directory. summary receives one line per file written (may be NULL). */
FASRSMA_API fasrsma_status fasrsma_experiment_run(const fasrsma_experiment* experiment, fasrsma_run_mode mode,
                                                  char** summary);
/* Analytic-vs-simulation summary of the results stored in directory. */
FASRSMA_API fasrsma_status fasrsma_report(const char* directory, char** text);

#ifdef __cplusplus
}
#endif

#endif /* FASRSMA_H */
