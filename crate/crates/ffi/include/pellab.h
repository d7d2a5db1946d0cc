#ifndef PELLAB_H
#define PELLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PellabStatus {
  PELLAB_STATUS_OK = 0,
  /**
   * Valid input, negative answer (not a solution, no root, ...).
   */
  PELLAB_STATUS_REJECTED = 1,
  PELLAB_STATUS_INVALID_ARGUMENT = 2,
  PELLAB_STATUS_PARSE_ERROR = 3,
  PELLAB_STATUS_NULL_POINTER = 4,
  PELLAB_STATUS_NOT_SPECIAL = 5,
  PELLAB_STATUS_TOO_LARGE = 6,
  PELLAB_STATUS_PANIC = 7,
} PellabStatus;

typedef struct PellabPoly PellabPoly;

typedef struct PellabTuple PellabTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library; valid until the next call on this thread.
 */
const char *pellab_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pellab_string_free(char *s);

/**
 * Parses a polynomial such as `t^4 - 2*t^2 + 1`.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` writable.
 */
enum PellabStatus pellab_poly_parse(const char *src, struct PellabPoly **out);

/**
 * Canonical text of `p`, or null on a null handle. Free with
 * [`pellab_string_free`].
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *pellab_poly_to_string(const struct PellabPoly *p);

/**
 * Degree of `p`, or -1 for the zero polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PellabStatus pellab_poly_degree(const struct PellabPoly *p, int64_t *out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void pellab_poly_free(struct PellabPoly *p);

/**
 * The Chebyshev polynomial `T_m`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PellabStatus pellab_chebyshev(uint32_t m, struct PellabPoly **out);

/**
 * The power polynomial `f_m`, `m >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PellabStatus pellab_power_polynomial(uint32_t m, struct PellabPoly **out);

/**
 * Checks `A^2 - D B^2 = 1`; on success writes `deg A` and `deg D / 2`.
 * `Rejected` carries the reason in [`pellab_last_error`].
 *
 * # Safety
 * Handles must be live; `out_n` and `out_d` null or writable.
 */
enum PellabStatus pellab_verify_pell(const struct PellabPoly *a,
                                     const struct PellabPoly *b,
                                     const struct PellabPoly *d,
                                     bool allow_d1,
                                     size_t *out_n,
                                     size_t *out_d);

/**
 * Completes a seed `A` to `(A, B, D)`.
 *
 * # Safety
 * `a` must be live; `out_b` and `out_d` writable.
 */
enum PellabStatus pellab_seed(const struct PellabPoly *a,
                              bool allow_d1,
                              struct PellabPoly **out_b,
                              struct PellabPoly **out_d);

/**
 * The `m`-th power `(A_m, B_m)` of a verified solution.
 *
 * # Safety
 * Handles must be live; `out_a` and `out_b` writable.
 */
enum PellabStatus pellab_power_solution(const struct PellabPoly *a,
                                        const struct PellabPoly *b,
                                        const struct PellabPoly *d,
                                        bool allow_d1,
                                        uint32_t m,
                                        struct PellabPoly **out_a,
                                        struct PellabPoly **out_b);

/**
 * A rational `A'` with `T_m(A') = sign * A`; `Rejected` when none exists.
 *
 * # Safety
 * `a` must be live; `out_root` and `out_sign` writable.
 */
enum PellabStatus pellab_extract_mth_root(const struct PellabPoly *a,
                                          uint32_t m,
                                          struct PellabPoly **out_root,
                                          int32_t *out_sign);

/**
 * The explicit primitive tuple for `n >= d >= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PellabStatus pellab_tuple_standard(size_t n, size_t d, struct PellabTuple **out);

/**
 * Reads a tuple from its JSON form.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum PellabStatus pellab_tuple_from_json(const char *json, struct PellabTuple **out);

/**
 * JSON form of `t`, or null on a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
char *pellab_tuple_to_json(const struct PellabTuple *t);

/**
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void pellab_tuple_free(struct PellabTuple *t);

/**
 * Runs every monodromy check. Writes whether all passed and, when
 * `out_report` is not null, the full report as JSON.
 *
 * # Safety
 * `t` must be live; `out_passed` writable; `out_report` null or writable.
 */
enum PellabStatus pellab_tuple_validate(const struct PellabTuple *t,
                                        bool *out_passed,
                                        char **out_report);

/**
 * Block conditions for an `m`-th power on a special tuple.
 *
 * # Safety
 * `t` must be live and `out` writable.
 */
enum PellabStatus pellab_tuple_power_test(const struct PellabTuple *t, size_t m, bool *out);

/**
 * Writes up to `capacity` powers of the profile into `buf` and the full
 * count into `out_len`.
 *
 * # Safety
 * `t` must be live; `buf` valid for `capacity` writes; `out_len` writable.
 */
enum PellabStatus pellab_tuple_profile(const struct PellabTuple *t,
                                       size_t *buf,
                                       size_t capacity,
                                       size_t *out_len);

/**
 * A conjugate of `t` in special form.
 *
 * # Safety
 * `t` must be live and `out` writable.
 */
enum PellabStatus pellab_tuple_normalize(const struct PellabTuple *t, struct PellabTuple **out);

/**
 * The census report for degree `n` as JSON. With `brute_force` set the
 * exhaustive search runs, failing with `TooLarge` above `brute_max`.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum PellabStatus pellab_census_json(size_t n, bool brute_force, size_t brute_max, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PELLAB_H */
