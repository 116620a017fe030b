/*
 * Laggard
 * Copyright (c) The Laggard Authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

/*
 * C interface to the laggard straggler-mitigation models.
 *
 * Every fallible call returns an lg_status. On failure the message is
 * available from lg_last_error() until the next call on the same thread.
 * Strings returned through char** are heap-allocated and released with
 * lg_string_free(). Handles are released with their *_free function;
 * passing NULL to a free function is a no-op.
 */

#ifndef LAGGARD_LAGGARD_H
#define LAGGARD_LAGGARD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LG_API __declspec(dllexport)
#else
#define LG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lg_status {
  LG_OK = 0,
  LG_ERR_DOMAIN = 1,
  LG_ERR_POLE = 2,
  LG_ERR_DIVERGENCE = 3,
  LG_ERR_DEGENERATE = 4,
  LG_ERR_INFINITE_MOMENT = 5,
  LG_ERR_EVALUATION = 6,
  LG_ERR_UNSUPPORTED = 7,
  LG_ERR_CONVERGENCE = 8,
  LG_ERR_INSTABILITY = 9,
  LG_ERR_IO = 10,
  LG_ERR_NULL_ARGUMENT = 11,
  LG_ERR_INTERNAL = 12
} lg_status;

typedef enum lg_launch { LG_LAUNCH_AT_DELTA = 0, LG_LAUNCH_AT_ZERO = 1 } lg_launch;

typedef enum lg_fit_family {
  LG_FIT_PARETO = 0,
  LG_FIT_TRUNCATED_PARETO = 1
} lg_fit_family;

typedef enum lg_tail_kind { LG_TAIL_CODED = 0, LG_TAIL_REPLICATED = 1 } lg_tail_kind;

typedef enum lg_verdict {
  LG_VERDICT_REDUCE = 0,
  LG_VERDICT_INCREASE = 1,
  LG_VERDICT_UNCHANGED = 2,
  LG_VERDICT_INCONCLUSIVE = 3
} lg_verdict;

/* Bits of lg_metrics.approx_flags. */
#define LG_APPROX_LATENCY 1u
#define LG_APPROX_COST_CANCEL 2u
#define LG_APPROX_COST_NOCANCEL 4u

/* Fields a formula does not provide are NaN. */
typedef struct lg_metrics {
  double latency_mean;
  double cost_cancel_mean;
  double cost_nocancel_mean;
  double latency_sd;
  double cost_sd;
  unsigned approx_flags;
} lg_metrics;

typedef struct lg_empirical {
  int64_t trials;
  double latency_mean;
  double latency_se;
  double latency_sd;
  double cost_cancel_mean;
  double cost_cancel_se;
  double cost_cancel_sd;
  double cost_nocancel_mean;
  double cost_nocancel_se;
  double latency_q50;
  double latency_q90;
  double latency_q99;
} lg_empirical;

typedef struct lg_relaunch_optimum {
  double delta_star;
  double p_star;
  double latency_norel;
  int sufficient_latency;
  int sufficient_alpha;
} lg_relaunch_optimum;

typedef struct lg_no_cost_replication {
  int feasible;
  int64_t c_max;
  double latency_min;
} lg_no_cost_replication;

typedef struct lg_no_cost_coding {
  int64_t n_max;
  double latency_min;
  int sufficient_ok;
  int necessary_ok;
  double latency_min_bound;
} lg_no_cost_coding;

typedef struct lg_dist lg_dist;
typedef struct lg_policy lg_policy;
typedef struct lg_sim lg_sim;
typedef struct lg_curve lg_curve;
typedef struct lg_cluster_config lg_cluster_config;
typedef struct lg_cluster_result lg_cluster_result;
typedef struct lg_samples lg_samples;
typedef struct lg_fit lg_fit;

LG_API const char* lg_version(void);
LG_API const char* lg_last_error(void);
LG_API const char* lg_status_name(lg_status status);
LG_API void lg_string_free(char* s);

/* Distributions: "exp:MU", "sexp:S,MU", "pareto:S,A", "tpareto:S,U,A",
 * "point:V", "empirical:PATH". */
LG_API lg_status lg_dist_parse(const char* text, lg_dist** out);
LG_API lg_status lg_dist_from_samples(const lg_samples* samples, lg_dist** out);
LG_API lg_status lg_dist_describe(const lg_dist* dist, char** out);
LG_API lg_status lg_dist_mean(const lg_dist* dist, double* out);
LG_API lg_status lg_dist_tail(const lg_dist* dist, double t, double* out);
LG_API void lg_dist_free(lg_dist* dist);

/* Policies start with no redundancy, delta 0, launch at delta, no relaunch. */
LG_API lg_status lg_policy_new(int64_t k, lg_policy** out);
LG_API lg_status lg_policy_set_none(lg_policy* p);
LG_API lg_status lg_policy_set_replication(lg_policy* p, int64_t c);
LG_API lg_status lg_policy_set_coding(lg_policy* p, int64_t n);
LG_API lg_status lg_policy_set_delta(lg_policy* p, double delta);
LG_API lg_status lg_policy_set_launch(lg_policy* p, lg_launch launch);
LG_API lg_status lg_policy_set_relaunch(lg_policy* p, int relaunch);
LG_API lg_status lg_policy_json(const lg_policy* p, char** out);
LG_API void lg_policy_free(lg_policy* p);

LG_API lg_status lg_evaluate(const lg_policy* p, const lg_dist* dist,
                             lg_metrics* out);
LG_API lg_status lg_evaluate_json(const lg_policy* p, const lg_dist* dist,
                                  char** out);
LG_API lg_status lg_zero_delay_moments(const lg_policy* p,
                                       const lg_dist* dist, lg_metrics* out);
LG_API lg_status lg_latency_tail(const lg_policy* p, const lg_dist* dist,
                                 double t, double* out);

LG_API lg_status lg_relaunch_optimum_eval(int64_t k, double s, double alpha,
                                          lg_relaunch_optimum* out);
LG_API lg_status lg_no_cost_replication_eval(int64_t k, double s, double alpha,
                                             lg_no_cost_replication* out);
LG_API lg_status lg_no_cost_coding_eval(int64_t k, double s, double alpha,
                                        lg_no_cost_coding* out);
LG_API lg_status lg_tail_change(int64_t k, double r_i, double r_j,
                                double alpha_i, double alpha_j,
                                lg_tail_kind kind, lg_verdict* verdict,
                                double* threshold);

/* Monte-Carlo simulation; threads <= 0 uses all cores. */
LG_API lg_status lg_simulate(const lg_policy* p, const lg_dist* dist,
                             int64_t trials, uint64_t seed, int threads,
                             int keep_trials, lg_sim** out);
LG_API lg_status lg_sim_summary(const lg_sim* sim, lg_empirical* out);
LG_API lg_status lg_sim_json(const lg_sim* sim, char** out);
LG_API lg_status lg_sim_write_trials_csv(const lg_sim* sim, const char* path);
LG_API lg_status lg_compare_json(const lg_metrics* analytic, const lg_sim* sim,
                                 int* all_pass, char** out);
LG_API void lg_sim_free(lg_sim* sim);

/* knob is one of "delta", "c", "n", "r". */
LG_API lg_status lg_sweep(const lg_policy* base, const lg_dist* dist,
                          const char* knob, const double* grid, size_t count,
                          lg_curve** out);
LG_API lg_status lg_curve_size(const lg_curve* curve, size_t* out);
LG_API lg_status lg_curve_point(const lg_curve* curve, size_t index,
                                double* knob, lg_metrics* metrics, int* ok);
LG_API lg_status lg_curve_write_csv(const lg_curve* curve, const char* path);
LG_API lg_status lg_curve_write_json(const lg_curve* curve, const char* path);
LG_API void lg_curve_free(lg_curve* curve);

LG_API lg_status lg_cluster_config_default(lg_cluster_config** out);
LG_API lg_status lg_cluster_config_parse(const char* json_text,
                                         lg_cluster_config** out);
LG_API lg_status lg_cluster_config_load(const char* path,
                                        lg_cluster_config** out);
LG_API lg_status lg_cluster_config_set_expansion(lg_cluster_config* c,
                                                 double r);
LG_API lg_status lg_cluster_config_set_horizon(lg_cluster_config* c,
                                               int64_t jobs);
LG_API lg_status lg_cluster_config_json(const lg_cluster_config* c,
                                        char** out);
LG_API void lg_cluster_config_free(lg_cluster_config* c);

LG_API lg_status lg_cluster_run(const lg_cluster_config* c, uint64_t seed,
                                lg_cluster_result** out);
LG_API lg_status lg_cluster_result_json(const lg_cluster_result* r, char** out);
LG_API lg_status lg_cluster_result_probe(const lg_cluster_result* r,
                                         lg_empirical* out);
LG_API lg_status lg_cluster_result_samples(const lg_cluster_result* r,
                                           lg_samples** out);
LG_API lg_status lg_cluster_export_samples(const lg_cluster_result* r,
                                           const char* path);
LG_API void lg_cluster_result_free(lg_cluster_result* r);

/* Sample files hold one positive value per line; '#' starts a comment. */
LG_API lg_status lg_samples_read(const char* path, lg_samples** out);
LG_API lg_status lg_samples_from_array(const double* values, size_t count,
                                       lg_samples** out);
LG_API lg_status lg_samples_data(const lg_samples* s, const double** values,
                                 size_t* count);
LG_API lg_status lg_samples_write(const lg_samples* s, const char* path);
LG_API void lg_samples_free(lg_samples* s);

LG_API lg_status lg_fit_samples(const lg_samples* s, lg_fit_family family,
                                lg_fit** out);
LG_API lg_status lg_fit_params(const lg_fit* f, double* s, double* u,
                               double* alpha, double* log_likelihood);
/* Fit parameters plus a goodness report against the given samples. */
LG_API lg_status lg_fit_json(const lg_fit* f, const lg_samples* s, char** out);
LG_API void lg_fit_free(lg_fit* f);

/* Event CSV header: job_id,task_id,event,timestamp. filter_k < 0 keeps all
 * jobs. The report lists malformed rows and dropped tasks. */
LG_API lg_status lg_trace_exec_times(const char* events_path, int64_t filter_k,
                                     lg_samples** out, char** report_json);
LG_API lg_status lg_trace_tail_csv(const lg_samples* s, const double* grid,
                                   size_t count, const char* out_path);
LG_API lg_status lg_trace_synthetic(const char* dist, int64_t jobs,
                                    int64_t tasks_per_job, uint64_t seed,
                                    const char* out_path);
LG_API lg_status lg_trace_convert_google(const char* in_path,
                                         const char* out_path,
                                         char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* LAGGARD_LAGGARD_H */
