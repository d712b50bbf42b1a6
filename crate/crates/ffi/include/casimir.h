#ifndef CASIMIR_H
#define CASIMIR_H

/* Generated by cbindgen from casimir-ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum CasStatus {
  /**
   * Success; for verification calls, every check passed.
   */
  CAS_STATUS_OK = 0,
  /**
   * The verification ran and at least one check failed.
   */
  CAS_STATUS_VERIFICATION_FAILED = 1,
  /**
   * The spec or an argument string could not be parsed.
   */
  CAS_STATUS_PARSE_ERROR = 2,
  /**
   * A required pointer argument was null.
   */
  CAS_STATUS_NULL_POINTER = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  CAS_STATUS_INVALID_UTF8 = 4,
  /**
   * An argument was out of range.
   */
  CAS_STATUS_INVALID_ARGUMENT = 5,
  /**
   * An internal invariant failed (a panic was caught).
   */
  CAS_STATUS_INTERNAL_ERROR = 6,
} CasStatus;

/**
 * Opaque handle to a constructed symmetric pair.
 */
typedef struct CasPair CasPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *cas_status_name(enum CasStatus status);

/**
 * Builds a pair from a spec string such as `"A2:switch"` or
 * `"B2:signs=+-"` and writes the handle to `out`.
 *
 * # Safety
 * `spec` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer.
 */
enum CasStatus cas_pair_new(const char *spec, struct CasPair **out);

/**
 * Releases a handle obtained from [`cas_pair_new`]. Null is ignored.
 *
 * # Safety
 * `pair` must be a pointer previously returned by [`cas_pair_new`]
 * and not freed before.
 */
void cas_pair_free(struct CasPair *pair);

/**
 * Releases a string returned through any `out` parameter here.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void cas_string_free(char *s);

/**
 * # Safety
 * `pair` must be null or a live handle from [`cas_pair_new`].
 */
size_t cas_pair_dim_g(const struct CasPair *pair);

/**
 * # Safety
 * `pair` must be null or a live handle from [`cas_pair_new`].
 */
size_t cas_pair_dim_k(const struct CasPair *pair);

/**
 * # Safety
 * `pair` must be null or a live handle from [`cas_pair_new`].
 */
size_t cas_pair_dim_p(const struct CasPair *pair);

/**
 * # Safety
 * `pair` must be null or a live handle from [`cas_pair_new`].
 */
size_t cas_pair_rank_k(const struct CasPair *pair);

/**
 * Number of abelian Borel-stable subspaces of `p` (all dimensions).
 *
 * # Safety
 * `pair` must be null or a live handle from [`cas_pair_new`].
 */
size_t cas_pair_abelian_count(const struct CasPair *pair);

/**
 * Construction facts as JSON (same shape as `casimir describe --format
 * json`).
 *
 * # Safety
 * `pair` must be a live handle; `out_json` must be writable.
 */
enum CasStatus cas_pair_describe_json(const struct CasPair *pair, char **out_json);

/**
 * The abelian enumeration as JSON: count plus per-subspace dimension,
 * weights and weight sum.
 *
 * # Safety
 * `pair` must be a live handle; `out_json` must be writable.
 */
enum CasStatus cas_pair_abelian_json(const struct CasPair *pair, char **out_json);

/**
 * Casimir spectrum rows for `p <= pmax`, as JSON.
 *
 * # Safety
 * `pair` must be a live handle; `out_json` must be writable.
 */
enum CasStatus cas_pair_spectrum_json(const struct CasPair *pair, uint32_t pmax, char **out_json);

/**
 * Runs the verification suite. `which` is one of `garland`, `eigen`,
 * `w`, `gl`, `finito`, `all`. `twice_smax` is the doubled energy bound
 * (so `6` means `s <= 3`). Returns `Ok` when every check passed,
 * `VerificationFailed` when the suite ran but a check failed; the JSON
 * report is written in both cases.
 * # Safety
 * `pair` must be a live handle; `which` must be NUL-terminated;
 * `out_json` must be writable.
 */
enum CasStatus cas_pair_verify_json(const struct CasPair *pair,
                                    const char *which,
                                    uint32_t pmax,
                                    int64_t twice_smax,
                                    char **out_json);

/**
 * Test hook: perturbs one structure constant so the verification suite
 * must detect the inconsistency. Bindings use this to prove their
 * plumbing actually reaches the checks.
 *
 * # Safety
 * `pair` must be null or a live handle with no aliasing use.
 */
void cas_pair_corrupt(struct CasPair *pair);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CASIMIR_H */
