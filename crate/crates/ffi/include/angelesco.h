#ifndef ANGELESCO_H
#define ANGELESCO_H

/* This file is generated by cbindgen from angelesco-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum AngStatus {
  ANG_STATUS_OK = 0,
  ANG_STATUS_VERIFY_FAILED = 1,
  ANG_STATUS_PARAM_ERROR = 2,
  ANG_STATUS_NUMERIC_ERROR = 3,
  ANG_STATUS_NULL_POINTER = 4,
  ANG_STATUS_INVALID_UTF8 = 5,
  ANG_STATUS_PANIC = 6,
} AngStatus;

/**
 * Opaque handle: a validated model (family, parameters, precision).
 */
typedef struct AngParams AngParams;

/**
 * Opaque handle: a computed polynomial in `w = z^r`.
 */
typedef struct AngPoly AngPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a Charlier model from a comma list of nonzero, distinct `a`
 * parameters (one per ray).
 *
 * # Safety
 * `a_list` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AngStatus ang_params_charlier(const char *a_list, uint32_t digits, struct AngParams **out);

/**
 * Create a Meixner first-kind model: per-ray `c` list and one shared `beta`.
 *
 * # Safety
 * Both strings must be NUL-terminated and `out` a valid pointer.
 */
enum AngStatus ang_params_meixner_first(const char *c_list,
                                        const char *beta,
                                        uint32_t digits,
                                        struct AngParams **out);

/**
 * Create a Meixner second-kind model: per-ray `beta` list and one shared `c`.
 *
 * # Safety
 * Both strings must be NUL-terminated and `out` a valid pointer.
 */
enum AngStatus ang_params_meixner_second(const char *beta_list,
                                         const char *c,
                                         uint32_t digits,
                                         struct AngParams **out);

/**
 * Number of rays of the star (0 for a null handle).
 *
 * # Safety
 * `params` must be null or a live handle from `ang_params_*`.
 */
size_t ang_params_rays(const struct AngParams *params);

/**
 * Release a params handle. Null is allowed.
 *
 * # Safety
 * `params` must be null or a live handle, not freed before.
 */
void ang_params_free(struct AngParams *params);

/**
 * Compute the monic polynomial at the multi-index `n` (length `n_len`,
 * one entry per ray) by the named construction route.
 *
 * # Safety
 * `params` must be a live handle from `ang_params_*`; `n` must point to
 * `n_len` entries; `method` must be NUL-terminated; `out` must be valid.
 */
enum AngStatus ang_compute(const struct AngParams *params,
                           const uint32_t *n,
                           size_t n_len,
                           const char *method,
                           struct AngPoly **out);

/**
 * Degree of the polynomial in `w` (0 for the constant; 0 for null).
 *
 * # Safety
 * `poly` must be null or a live handle from `ang_compute`.
 */
size_t ang_poly_degree(const struct AngPoly *poly);

/**
 * Coefficient of `w^m` as two decimal strings (free with
 * `ang_string_free`).
 *
 * # Safety
 * `poly` must be a live handle; the output pointers must be valid.
 */
enum AngStatus ang_poly_coeff(const struct AngPoly *poly, size_t m, char **re_out, char **im_out);

/**
 * Evaluate the polynomial at a complex `w` given as a decimal literal;
 * the value comes back as two decimal strings.
 *
 * # Safety
 * `poly` must be a live handle; `w` NUL-terminated; outputs valid.
 */
enum AngStatus ang_poly_eval(const struct AngPoly *poly,
                             const char *w,
                             char **re_out,
                             char **im_out);

/**
 * Release a polynomial handle. Null is allowed.
 *
 * # Safety
 * `poly` must be null or a live handle, not freed before.
 */
void ang_poly_free(struct AngPoly *poly);

/**
 * Run the verification suite up to `nmax` and return the report as JSON
 * (free with `ang_string_free`). Returns `Ok` when every check passes and
 * `VerifyFailed` when any hard check fails (the JSON is produced either
 * way).
 *
 * # Safety
 * `params` must be a live handle and `report_json_out` a valid pointer.
 */
enum AngStatus ang_verify(const struct AngParams *params,
                          uint32_t nmax,
                          uint64_t seed,
                          char **report_json_out);

/**
 * Roots of the polynomial at `n` (by the recurrence route) as the zeros
 * CSV: `w` rows then fan-out `z` rows.
 *
 * # Safety
 * As for `ang_compute`; `csv_out` must be valid.
 */
enum AngStatus ang_zeros_csv(const struct AngParams *params,
                             const uint32_t *n,
                             size_t n_len,
                             char **csv_out);

/**
 * Certified moment table as JSON with tolerance `10^-(digits-10)`.
 *
 * # Safety
 * `params` must be a live handle and `json_out` a valid pointer.
 */
enum AngStatus ang_moments_json(const struct AngParams *params,
                                size_t jmax,
                                size_t mmax,
                                char **json_out);

/**
 * Nearest-neighbor recurrence coefficients for all `|n| <= nmax` as CSV.
 *
 * # Safety
 * `params` must be a live handle and `csv_out` a valid pointer.
 */
enum AngStatus ang_recurrence_table_csv(const struct AngParams *params,
                                        uint32_t nmax,
                                        char **csv_out);

/**
 * Message for the most recent failure on this thread (free with
 * `ang_string_free`), or null if the last call succeeded.
 */
char *ang_last_error(void);

/**
 * Free a string returned by this library. Null is allowed.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void ang_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANGELESCO_H */
