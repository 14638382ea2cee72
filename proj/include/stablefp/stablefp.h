/* SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef STABLEFP_STABLEFP_H
#define STABLEFP_STABLEFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SFP_API __declspec(dllexport)
#else
#define SFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returns a status. On failure the message is available from
 * sfp_last_error() on the calling thread until the next call fails. */
typedef enum sfp_status {
  SFP_OK = 0,
  SFP_ERR_DOMAIN = 1,    /* argument outside the domain */
  SFP_ERR_NUMERICAL = 2, /* tolerance not reached; out holds the best estimate */
  SFP_ERR_USAGE = 3,     /* bad handle, null pointer, unknown name */
  SFP_ERR_INTERNAL = 4
} sfp_status;

typedef struct sfp_result {
  double value;
  double abs_err;
  const char* method; /* static string, never freed */
  int64_t n_work;
} sfp_result;

SFP_API const char* sfp_last_error(void);
SFP_API const char* sfp_version(void);

/* ---- Mittag-Leffler functions and D_alpha ------------------------------ */

SFP_API sfp_status sfp_mlf(double order, double x, double tol, sfp_result* out);
SFP_API sfp_status sfp_mlf_derivative(double order, double x, double tol, sfp_result* out);
/* alpha in [1, 2], x >= 0. */
SFP_API sfp_status sfp_D(double alpha, double x, double tol, sfp_result* out);
SFP_API sfp_status sfp_F(double alpha, double y, double tol, sfp_result* out);
SFP_API sfp_status sfp_D4_golden(double x, double* out);
SFP_API sfp_status sfp_mu_density(double alpha, double t, double* out);
SFP_API sfp_status sfp_mlf_law_density(double order, double u, double* out);
/* P[S_tau_q >= x]. */
SFP_API sfp_status sfp_survival_S_tau(double alpha, double q, double x, double tol,
                                      sfp_result* out);
/* E[exp(-lambda S_tau_q)] in closed form. */
SFP_API sfp_status sfp_wh_transform(double alpha, double q, double lambda, double* out);

/* ---- Densities and distribution functions ------------------------------ */

/* name: "T", "That1", "g", "h", "T1", "S1", "Tbar", "Ttilde".
 * method: NULL or "auto", or a representation tag (see the C++ header).
 * An unknown name is SFP_ERR_USAGE; a method the density lacks is SFP_ERR_DOMAIN. */
SFP_API sfp_status sfp_density(const char* name, double alpha, double t, const char* method,
                               double tol, sfp_result* out);
/* P[X <= t] for name in "T", "Tbar", "Ttilde", "That1", "T1", "S1". */
SFP_API sfp_status sfp_cdf(const char* name, double alpha, double t, sfp_result* out);
/* Inverse of sfp_cdf for "T", "Tbar", "Ttilde", "That1", "T1". */
SFP_API sfp_status sfp_quantile(const char* name, double alpha, double p, double* out);

/* ---- Random streams and samplers --------------------------------------- */

typedef struct sfp_rng sfp_rng;

SFP_API sfp_status sfp_rng_create(uint64_t seed, uint64_t stream_id, sfp_rng** out);
SFP_API void sfp_rng_destroy(sfp_rng* rng);
SFP_API sfp_status sfp_rng_uniform(sfp_rng* rng, double* out);
/* Stream used by the next sfp_sample call. */
SFP_API sfp_status sfp_rng_stream_id(const sfp_rng* rng, uint64_t* out);

typedef struct sfp_sample_params {
  double alpha;
  int64_t n_steps;  /* path samplers; grid on [0, horizon] */
  double horizon;
  double q;         /* "sup_exp_time" */
  double grid_step; /* "sup_exp_time" */
  int workers;
} sfp_sample_params;

SFP_API void sfp_sample_params_default(sfp_sample_params* p);

/* Writes n draws to out. distribution is one of "That1", "T", "Tbar",
 * "Ttilde", "T1_product", "X1", "X1_negative", "S1_conditioned", "sup_X",
 * "sup_Xhat", "sup_exp_time", "T1_grid". A batch is a pure function of
 * (seed, stream id, distribution, params, n); afterwards the handle moves to
 * the next stream id. *redrawn (may be NULL) receives rejected draws. */
SFP_API sfp_status sfp_sample(sfp_rng* rng, const char* distribution,
                              const sfp_sample_params* params, size_t n, double* out,
                              uint64_t* redrawn);

/* ---- Check suites ------------------------------------------------------ */

typedef struct sfp_suite sfp_suite;

typedef struct sfp_report_info {
  const char* name;
  double alpha;
  double statistic;
  double threshold;
  int passed;
} sfp_report_info;

/* names: comma separated check names, "all" or "deterministic".
 * overrides_json: NULL or a JSON object of numbers, e.g. {"thm3.n": 1e4}. */
SFP_API sfp_status sfp_suite_run(const char* names, const double* alphas, size_t n_alphas,
                                 uint64_t seed, int workers, const char* overrides_json,
                                 sfp_suite** out);
SFP_API void sfp_suite_destroy(sfp_suite* suite);
SFP_API sfp_status sfp_suite_size(const sfp_suite* suite, size_t* out);
/* Strings stay valid until the suite is destroyed. */
SFP_API sfp_status sfp_suite_report(const sfp_suite* suite, size_t i, sfp_report_info* out);
SFP_API sfp_status sfp_suite_report_json(const sfp_suite* suite, size_t i, const char** out);
/* Comma separated list of the known check names. */
SFP_API const char* sfp_check_names(void);

#ifdef __cplusplus
}
#endif

#endif /* STABLEFP_STABLEFP_H */
