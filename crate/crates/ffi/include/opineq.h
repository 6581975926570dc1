#ifndef OPINEQ_H
#define OPINEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `OPINEQ_STATUS_OK` is zero.
 */
typedef enum OpineqStatus {
  OPINEQ_STATUS_OK = 0,
  OPINEQ_STATUS_NULL_POINTER = 1,
  OPINEQ_STATUS_INVALID_ARGUMENT = 2,
  OPINEQ_STATUS_DIMENSION_MISMATCH = 3,
  OPINEQ_STATUS_NON_FINITE = 4,
  OPINEQ_STATUS_NO_CONVERGENCE = 5,
  OPINEQ_STATUS_OUT_OF_DOMAIN = 6,
  OPINEQ_STATUS_NOT_POSITIVE_DEFINITE = 7,
  OPINEQ_STATUS_HYPOTHESIS_NOT_MET = 8,
  OPINEQ_STATUS_INVALID_WEIGHT = 9,
  OPINEQ_STATUS_IO = 10,
  OPINEQ_STATUS_OUT_OF_RANGE = 11,
  OPINEQ_STATUS_PANIC = 12,
} OpineqStatus;

/**
 * Real symmetric matrix.
 */
typedef struct OpineqMatrix OpineqMatrix;

/**
 * Outcome of one inequality check.
 */
typedef struct OpineqReport OpineqReport;

/**
 * Reports returned by the example suite.
 */
typedef struct OpineqReportList OpineqReportList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *opineq_last_error(void);

/**
 * Library version as a static string.
 */
const char *opineq_version(void);

/**
 * Builds a `dim x dim` matrix from `dim * dim` row-major entries; the
 * input is symmetrized.
 *
 * # Safety
 * `data` must point to `dim * dim` doubles and `out` must be writable.
 */
enum OpineqStatus opineq_matrix_new(size_t dim, const double *data, struct OpineqMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void opineq_matrix_free(struct OpineqMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t opineq_matrix_dim(const struct OpineqMatrix *m);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum OpineqStatus opineq_matrix_get(const struct OpineqMatrix *m,
                                    size_t row,
                                    size_t col,
                                    double *out);

/**
 * Copies the row-major entries into `buf`, which must hold `dim * dim` doubles.
 *
 * # Safety
 * `buf` must be writable for `len` doubles.
 */
enum OpineqStatus opineq_matrix_copy(const struct OpineqMatrix *m, double *buf, size_t len);

/**
 * `f(m)` for a function spec such as `"power:1.5"`, `"log"` or `"neg:square"`.
 *
 * # Safety
 * `fn_spec` must be a nul-terminated string, `m` a live handle, `out` writable.
 */
enum OpineqStatus opineq_apply_fn(const char *fn_spec,
                                  const struct OpineqMatrix *m,
                                  struct OpineqMatrix **out);

/**
 * Loewner comparison `x <= y`. A `tol_scale` of zero or less uses the default.
 *
 * # Safety
 * `x`, `y` live handles; `holds` and `min_eig` writable or null.
 */
enum OpineqStatus opineq_loewner_leq(const struct OpineqMatrix *x,
                                     const struct OpineqMatrix *y,
                                     double tol_scale,
                                     int *holds,
                                     double *min_eig);

/**
 * Runs one checker on the segment from `a` to `b`.
 *
 * `theorem_id` is one of `hermite_hadamard`, `fejer`, `levin_steckin`,
 * `ostrowski_reverse`, `gateaux_reverse`, `cebysev_reverse`,
 * `lupas_reverse`. `weight_spec` may be null for `hermite_hadamard`.
 * `points = panels = 0` selects the default 16x32 rule.
 *
 * # Safety
 * String arguments must be nul-terminated, handles live, `out` writable.
 */
enum OpineqStatus opineq_check(const char *theorem_id,
                               const char *fn_spec,
                               const char *weight_spec,
                               const struct OpineqMatrix *a,
                               const struct OpineqMatrix *b,
                               size_t points,
                               size_t panels,
                               struct OpineqReport **out);

/**
 * # Safety
 * `r` must be null or a report handle not yet freed. Reports borrowed from a
 * list must not be passed here.
 */
void opineq_report_free(struct OpineqReport *r);

/**
 * 1 when `0 <= gap <= bound` (and any further links) hold, 0 otherwise or for null.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int opineq_report_passed(const struct OpineqReport *r);

/**
 * Smallest eigenvalue margin over the chain; NaN for null.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
double opineq_report_worst_margin(const struct OpineqReport *r);

/**
 * `lambda_max(gap) / lambda_max(bound)`, NaN when undefined.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
double opineq_report_tightness(const struct OpineqReport *r);

/**
 * Scalar prefactor of the bound; NaN for null.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
double opineq_report_coefficient(const struct OpineqReport *r);

/**
 * Static theorem id string, or null for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *opineq_report_theorem(const struct OpineqReport *r);

/**
 * Label string, valid while the report lives.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *opineq_report_label(const struct OpineqReport *r);

/**
 * Instance description, valid while the report lives.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *opineq_report_instance(const struct OpineqReport *r);

/**
 * New matrix handle holding the gap operator.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum OpineqStatus opineq_report_gap(const struct OpineqReport *r, struct OpineqMatrix **out);

/**
 * New matrix handle holding the bound operator.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum OpineqStatus opineq_report_bound(const struct OpineqReport *r, struct OpineqMatrix **out);

/**
 * Runs the worked examples (powers, inverse, logarithm with `p(t) = t(1-t)`)
 * on positive definite `a`, `b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum OpineqStatus opineq_run_example_suite(const struct OpineqMatrix *a,
                                           const struct OpineqMatrix *b,
                                           size_t points,
                                           size_t panels,
                                           struct OpineqReportList **out);

/**
 * # Safety
 * `list` must be null or a live handle.
 */
size_t opineq_report_list_len(const struct OpineqReportList *list);

/**
 * Borrowed report at `index`, null when out of range. Valid while the list lives.
 *
 * # Safety
 * `list` must be null or a live handle.
 */
const struct OpineqReport *opineq_report_list_get(const struct OpineqReportList *list,
                                                  size_t index);

/**
 * # Safety
 * `list` must be null or a live handle not yet freed.
 */
void opineq_report_list_free(struct OpineqReportList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPINEQ_H */
