/*
 * SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CCRT_H
#define CCRT_H

#include <stddef.h>
#include <stdint.h>

#if defined(CCRT_BUILDING_LIBRARY)
#define CCRT_API __attribute__((visibility("default")))
#else
#define CCRT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct {
  int64_t re;
  int64_t im;
} ccrt_gint;

typedef struct {
  double re;
  double im;
} ccrt_complex;

typedef enum {
  CCRT_OK = 0,
  CCRT_E_INVALID_ARGUMENT = 1,
  CCRT_E_OVERFLOW = 2,
  CCRT_E_DIVISION_BY_ZERO = 3,
  CCRT_E_NOT_COPRIME = 4,
  CCRT_E_NO_INVERSE = 5,
  CCRT_E_INCONSISTENT = 6,
  CCRT_E_DOMAIN = 7,
  CCRT_E_LIMIT = 8,
  CCRT_E_PRECONDITION = 9,
  CCRT_E_CONFIG = 10,
  CCRT_E_IO = 11,
  CCRT_E_INTERNAL = 99
} ccrt_status;

/* Message of the last failing call on this thread; "" when none. */
CCRT_API const char* ccrt_last_error(void);
CCRT_API const char* ccrt_version(void);
/* Frees strings returned through char** out-parameters. */
CCRT_API void ccrt_string_free(char* s);

/* Gaussian integers */
CCRT_API ccrt_status ccrt_gint_parse(const char* text, ccrt_gint* out);
/* Writes "a+bi" (NUL-terminated). Fails with CCRT_E_LIMIT if cap is too small. */
CCRT_API ccrt_status ccrt_gint_format(ccrt_gint z, char* buf, size_t cap);
CCRT_API ccrt_status ccrt_gint_mul(ccrt_gint a, ccrt_gint b, ccrt_gint* out);
CCRT_API ccrt_status ccrt_gint_rounded_quotient(ccrt_gint n, ccrt_gint m, ccrt_gint* out);
CCRT_API ccrt_status ccrt_gint_gcd(ccrt_gint a, ccrt_gint b, ccrt_gint* out);
/* u*a + v*b = g */
CCRT_API ccrt_status ccrt_gint_extended_gcd(ccrt_gint a, ccrt_gint b, ccrt_gint* g, ccrt_gint* u, ccrt_gint* v);
CCRT_API ccrt_status ccrt_gint_mod_inverse(ccrt_gint a, ccrt_gint m, ccrt_gint* out);
CCRT_API ccrt_status ccrt_gint_is_coprime(ccrt_gint a, ccrt_gint b, int* out);

/* Complex values and modulo */
CCRT_API ccrt_status ccrt_complex_parse(const char* text, ccrt_complex* out);
CCRT_API ccrt_status ccrt_complex_format(ccrt_complex z, char* buf, size_t cap);
CCRT_API ccrt_status ccrt_mod(ccrt_complex n, ccrt_gint m, ccrt_complex* out);
CCRT_API ccrt_status ccrt_circ_dist(ccrt_complex x, ccrt_complex y, ccrt_gint m, ccrt_complex* out);

/* Modulus systems (opaque, immutable, safe to share between threads) */
typedef struct ccrt_system ccrt_system;

CCRT_API ccrt_status ccrt_system_create(int64_t M, const ccrt_gint* cofactors, size_t count, ccrt_system** out);
CCRT_API void ccrt_system_destroy(ccrt_system* sys);
CCRT_API size_t ccrt_system_size(const ccrt_system* sys);
CCRT_API int64_t ccrt_system_M(const ccrt_system* sys);
CCRT_API int64_t ccrt_system_gamma(const ccrt_system* sys);
/* Per-index values: kind 0 = cofactor, 1 = gamma_i, 2 = gamma_bar_i, 3 = M*Gamma_i. */
CCRT_API ccrt_status ccrt_system_value(const ccrt_system* sys, size_t index, int kind, ccrt_gint* out);

/* Arrays of length ccrt_system_size(sys). */
CCRT_API ccrt_status ccrt_remainders(const ccrt_system* sys, ccrt_complex n, ccrt_complex* out);
CCRT_API ccrt_status ccrt_reconstruct_theorem1(const ccrt_system* sys, const ccrt_complex* remainders,
                                               ccrt_complex* out);

typedef struct {
  ccrt_complex n;
  ccrt_complex r_common;
  ccrt_gint n0;
} ccrt_common_solution;

/* q_out may be NULL. */
CCRT_API ccrt_status ccrt_solve_common(const ccrt_system* sys, const ccrt_complex* remainders,
                                       ccrt_common_solution* out, ccrt_gint* q_out);

typedef struct {
  ccrt_complex n_hat;
  ccrt_complex rc_hat;
  ccrt_gint n0_hat;
  double objective;
  int64_t evaluations;
  int64_t common_stage_mults;
  int64_t reconstruction_mults;
} ccrt_estimate;

/* sigmas: per-axis standard deviations, all > 0. q_out may be NULL. */
CCRT_API ccrt_status ccrt_estimate_run(const ccrt_system* sys, const ccrt_complex* remainders, const double* sigmas,
                                       ccrt_estimate* out, ccrt_gint* q_out);
CCRT_API ccrt_status ccrt_objective(const ccrt_system* sys, ccrt_complex z, const ccrt_complex* remainders,
                                    const double* sigmas, double* out);
/* Requires real cofactors; real and imaginary parts are estimated separately. */
CCRT_API ccrt_status ccrt_estimate_dual_real(const ccrt_system* sys, const ccrt_complex* remainders,
                                             const double* sigmas, ccrt_complex* out);

/* Robustness */
typedef struct {
  int condition_holds;
  int in_region;
  int mean_in_range;
  ccrt_complex weighted_mean;
  double min_margin;
} ccrt_robustness;

CCRT_API ccrt_status ccrt_robustness_analyze(const ccrt_system* sys, ccrt_complex n, const ccrt_complex* deltas,
                                             const double* sigmas, ccrt_robustness* out);
CCRT_API ccrt_status ccrt_theoretical_rmse(const double* sigmas, size_t count, double* out);

typedef struct {
  double p_axis;
  double p_joint_predicted;
  double p_joint_empirical;
  double ci_low;
  double ci_high;
} ccrt_probability;

CCRT_API ccrt_status ccrt_error_preserving_probability(const double* sigmas, size_t count, int64_t M, int64_t trials,
                                                       uint64_t seed, unsigned threads, ccrt_probability* out);

/* Noise model */
CCRT_API ccrt_status ccrt_three_sigma_check(ccrt_gint modulus, double sigma, int grid, double* out);
CCRT_API ccrt_status ccrt_snr_from_u(double u, double* out);
CCRT_API ccrt_status ccrt_u_from_snr(double snr_db, double* out);

/* ADC folding: y in [0, |m|)^2 in rotated coordinates, r = y e^{i arg m}. */
CCRT_API ccrt_status ccrt_channel_fold(ccrt_complex sample, ccrt_gint modulus, ccrt_complex* y, ccrt_complex* r);

/* Campaigns. has_seed != 0 overrides the config seed. Strings are freed
 * with ccrt_string_free. config_echo_out may be NULL. */
CCRT_API ccrt_status ccrt_campaign_run(const char* config_json, int has_seed, uint64_t seed, unsigned threads,
                                       char** csv_out, char** config_echo_out, uint64_t* seed_used);
CCRT_API ccrt_status ccrt_count_ops_csv(const int* Ls, size_t count, uint64_t seed, char** csv_out);
CCRT_API uint64_t ccrt_fnv1a(const char* data, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* CCRT_H */
