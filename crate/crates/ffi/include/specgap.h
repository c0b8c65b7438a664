#ifndef SPECGAP_H
#define SPECGAP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_INVALID_INPUT = 1,
  SG_STATUS_NON_INTEGRABLE = 2,
  SG_STATUS_DOMAIN_ERROR = 3,
  SG_STATUS_HYPOTHESIS_FAILED = 4,
  SG_STATUS_DISCRETIZATION_ERROR = 5,
  SG_STATUS_CONVERGENCE_ERROR = 6,
  SG_STATUS_DEGENERATE_FUNCTION = 7,
  SG_STATUS_NULL_POINTER = 8,
  SG_STATUS_PANIC = 9,
} SgStatus;

typedef enum SgFamily {
  SG_FAMILY_GAUSSIAN = 0,
  SG_FAMILY_EXP_POWER = 1,
  SG_FAMILY_BALL = 2,
  SG_FAMILY_CAUCHY = 3,
} SgFamily;

typedef enum SgWeight {
  /**
   * σ² = 1.
   */
  SG_WEIGHT_UNIT = 0,
  /**
   * σ² = 1 + r².
   */
  SG_WEIGHT_ONE_PLUS_R2 = 1,
  /**
   * σ² = 1/(1 + r²).
   */
  SG_WEIGHT_INV_ONE_PLUS_R2 = 2,
} SgWeight;

typedef enum SgScope {
  SG_SCOPE_RADIAL = 0,
  SG_SCOPE_FULL = 1,
} SgScope;

/**
 * Opaque model handle.
 */
typedef struct SgModel SgModel;

typedef struct SgGap {
  double value;
  double error_estimate;
  size_t n_cells_used;
  /**
   * Nonzero when the value was extrapolated in the window length.
   */
  int32_t window_extrapolated;
} SgGap;

typedef struct SgBracket {
  double lower;
  double upper;
} SgBracket;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a model. `param` is α for the exponential power family and β for
 * the Cauchy family; it is ignored otherwise.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum SgStatus sg_model_new(enum SgFamily family,
                           double param,
                           uint32_t n,
                           enum SgWeight weight,
                           struct SgModel **out);

/**
 * Release a model; null is accepted.
 *
 * # Safety
 * `m` must come from `sg_model_new` and not be used afterwards.
 */
void sg_model_free(struct SgModel *m);

/**
 * Radial spectral gap from the Sturm–Liouville solver; `n_cells` = 0 selects
 * the default mesh.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum SgStatus sg_spectral_gap(const struct SgModel *m, size_t n_cells, struct SgGap *out);

/**
 * ∫r^k dν.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum SgStatus sg_moment(const struct SgModel *m, uint32_t k, double *out);

/**
 * [(n-1)/m2, n/m2].
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum SgStatus sg_main_theorem_bracket(const struct SgModel *m, struct SgBracket *out);

/**
 * Full-space bracket from a radial gap and the weighted moments of the model.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum SgStatus sg_weighted_comparison(const struct SgModel *m,
                                     double radial_gap,
                                     struct SgBracket *out);

/**
 * Tabulated reference value or bracket; exact values have lower = upper and
 * unknown ends are 0 and +inf.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum SgStatus sg_reference_gap(const struct SgModel *m, enum SgScope scope, struct SgBracket *out);

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL, or
 * 0 when there is no error.
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null.
 */
size_t sg_last_error_message(char *buf, size_t len);

/**
 * Clear the last error of this thread.
 */
void sg_clear_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECGAP_H */
