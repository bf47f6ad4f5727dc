#ifndef LATTICE_AREA_H
#define LATTICE_AREA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LaStatus {
  LA_STATUS_OK = 0,
  LA_STATUS_NULL_POINTER = 1,
  LA_STATUS_INVALID_ARGUMENT = 2,
  LA_STATUS_BUDGET_EXCEEDED = 3,
  LA_STATUS_INCONSISTENT = 4,
  LA_STATUS_NUMERICAL = 5,
  LA_STATUS_BUFFER_TOO_SMALL = 6,
  LA_STATUS_PANIC = 7,
} LaStatus;

/**
 * Opaque exact area distribution.
 */
typedef struct LaDistribution LaDistribution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *la_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *la_version(void);

/**
 * The phase constant `c` of the trace identity built into this library.
 */
uint32_t la_phase_constant(void);

/**
 * Exact counts by direct enumeration (`N <= 14`).
 */
enum LaStatus la_enumerate_counts(uint32_t n, struct LaDistribution **out);

/**
 * Exact counts by dynamic programming.
 */
enum LaStatus la_dp_counts(uint32_t n, struct LaDistribution **out);

/**
 * Exact counts recovered from Harper-operator traces (`N <= 24`).
 */
enum LaStatus la_invert_counts(uint32_t n, struct LaDistribution **out);

/**
 * Parses the canonical JSON form.
 */
enum LaStatus la_distribution_from_json(const char *json, struct LaDistribution **out);

void la_distribution_free(struct LaDistribution *d);

/**
 * Walk length, or 0 for NULL.
 */
uint32_t la_distribution_n(const struct LaDistribution *d);

/**
 * Number of areas with a nonzero count, or 0 for NULL.
 */
size_t la_distribution_len(const struct LaDistribution *d);

/**
 * Area of the `index`-th entry, in increasing order.
 */
enum LaStatus la_distribution_area_at(const struct LaDistribution *d,
                                      size_t index,
                                      int64_t *out_area);

/**
 * Decimal count for `area` (0 when absent), NUL-terminated into `buf`.
 *
 * `out_needed` (optional) receives the required buffer size including the
 * terminator; `LA_STATUS_BUFFER_TOO_SMALL` is returned when `buf_len` is
 * short.
 */
enum LaStatus la_distribution_count(const struct LaDistribution *d,
                                    int64_t area,
                                    char *buf,
                                    size_t buf_len,
                                    size_t *out_needed);

/**
 * Total number of closed walks as a decimal string; free with [`la_string_free`].
 */
char *la_distribution_total(const struct LaDistribution *d);

/**
 * `C(N, A) / Ω_N` for one area.
 */
enum LaStatus la_distribution_probability(const struct LaDistribution *d,
                                          int64_t area,
                                          double *out);

/**
 * Canonical JSON; free with [`la_string_free`].
 */
char *la_distribution_to_json(const struct LaDistribution *d);

/**
 * `area,count` CSV; free with [`la_string_free`].
 */
char *la_distribution_to_csv(const struct LaDistribution *d);

void la_string_free(char *s);

/**
 * Trace per unit area of `H^N` at flux `p/q`.
 */
enum LaStatus la_trace_power(uint32_t n, uint64_t p, uint64_t q, double *out_re, double *out_im);

/**
 * Re-runs the phase calibration and writes the fitted constant.
 */
enum LaStatus la_calibrate_phase(uint32_t *out_constant);

/**
 * `Ω_N / (4^{N+1}/(2πN))`.
 */
enum LaStatus la_omega_ratio(uint32_t n, double *out);

double la_characteristic_limit(double x);

enum LaStatus la_characteristic_corrected(uint32_t n, double x, double *out);

double la_density_limit(double a);

enum LaStatus la_density_corrected(uint32_t n, double a, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATTICE_AREA_H */
