#ifndef CROSSFAM_H
#define CROSSFAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfStatus {
  CF_STATUS_OK = 0,
  CF_STATUS_INVALID_ARGUMENT = 1,
  CF_STATUS_OUT_OF_RANGE = 2,
  CF_STATUS_OVERFLOW = 3,
  CF_STATUS_NOT_CROSS_INTERSECTING = 4,
  CF_STATUS_NO_MATCHING = 5,
  CF_STATUS_CONFIG_BOUNDS = 6,
  CF_STATUS_SOLVER = 7,
  CF_STATUS_NULL_POINTER = 8,
  CF_STATUS_BUFFER_TOO_SMALL = 9,
  CF_STATUS_INTERNAL = 10,
} CfStatus;

typedef enum CfOrder {
  CF_ORDER_LEX = 0,
  CF_ORDER_COLEX = 1,
  CF_ORDER_REV_COLEX = 2,
} CfOrder;

typedef enum CfMode {
  /**
   * The claim's own default.
   */
  CF_MODE_DEFAULT = 0,
  CF_MODE_EXHAUSTIVE_FAMILIES = 1,
  CF_MODE_SEGMENT_PAIRS = 2,
  CF_MODE_SAMPLED = 3,
} CfMode;

/**
 * A family of `k`-subsets of `[n]`.
 */
typedef struct CfFamily CfFamily;

/**
 * Sweep parameters for [`cf_verify`]. Start from [`cf_sweep_config_default`].
 */
typedef struct CfSweepConfig {
  uint32_t n_lo;
  uint32_t n_hi;
  uint32_t k_lo;
  uint32_t k_hi;
  /**
   * Range of `i` (`j` for lemma7); `i_lo = 0` means the claim's default.
   */
  uint32_t i_lo;
  uint32_t i_hi;
  /**
   * Negative means the claim's default.
   */
  int32_t t;
  enum CfMode mode;
  uint64_t samples;
  uint64_t seed;
} CfSweepConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *cf_last_error_message(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cf_string_free(char *s);

/**
 * `C(m, b)`; 0 outside `0 <= b <= m`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_binom(int64_t m, int64_t b, uint64_t *out);

/**
 * Empty family of `k`-subsets of `[n]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_family_new(uint32_t n, uint32_t k, struct CfFamily **out);

/**
 * Initial segment of size `m` under `ord`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_family_segment(enum CfOrder ord,
                                uint32_t n,
                                uint32_t k,
                                uint64_t m,
                                struct CfFamily **out);

/**
 * # Safety
 * `f` must be null or a live handle from this library.
 */
void cf_family_free(struct CfFamily *f);

/**
 * Adds a set; `*out_added` tells whether it was new.
 *
 * # Safety
 * `f` must be a live handle; `elements` must point to `len` values.
 */
enum CfStatus cf_family_insert(struct CfFamily *f,
                               const uint32_t *elements_ptr,
                               size_t len,
                               bool *out_added);

/**
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum CfStatus cf_family_len(const struct CfFamily *f, size_t *out);

/**
 * Copies the `index`-th member (in the family's iteration order) into `out`,
 * which has room for `cap` elements; `*out_len` receives the set size.
 *
 * # Safety
 * `f` must be a live handle; `out` must have room for `cap` values.
 */
enum CfStatus cf_family_get(const struct CfFamily *f,
                            size_t index,
                            uint32_t *out,
                            size_t cap,
                            size_t *out_len);

/**
 * New handle holding the `t`-shadow of `f`.
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum CfStatus cf_family_shadow(const struct CfFamily *f, uint32_t t, struct CfFamily **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` valid for writes.
 */
enum CfStatus cf_is_cross_intersecting(const struct CfFamily *a,
                                       const struct CfFamily *b,
                                       bool *out);

/**
 * 0-based rank of a set of `[n]` under `ord`.
 *
 * # Safety
 * `elements` must point to `len` values; `out` valid for writes.
 */
enum CfStatus cf_rank(uint32_t n,
                      const uint32_t *elements_ptr,
                      size_t len,
                      enum CfOrder ord,
                      uint64_t *out);

/**
 * Set at a 0-based rank, written to `out` (room for `cap` elements).
 *
 * # Safety
 * `out` must have room for `cap` values; `out_len` valid for writes.
 */
enum CfStatus cf_unrank(uint32_t n,
                        uint32_t k,
                        enum CfOrder ord,
                        uint64_t rank,
                        uint32_t *out,
                        size_t cap,
                        size_t *out_len);

/**
 * Least `t`-shadow of `m` sets of size `k` from `[n]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_kk_min_shadow(uint32_t n, uint32_t k, uint32_t t, uint64_t m, uint64_t *out);

/**
 * `C(x, t)` with `C(x, k) = m`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_lovasz_bound(uint64_t m, uint32_t k, uint32_t t, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_max_compatible_b(uint32_t n, uint32_t k, uint64_t a, uint64_t *out);

/**
 * `C(n-1,k-1)^2`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_pyber_bound(uint32_t n, uint32_t k, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_thm1_bound(uint32_t n, uint32_t k, uint64_t *out);

/**
 * Size threshold on `|B|` and the product bound for `3 <= i <= k + 1`.
 *
 * # Safety
 * Both out-pointers must be valid for writes.
 */
enum CfStatus cf_thm2_bound(uint32_t n,
                            uint32_t k,
                            uint32_t i,
                            uint64_t *out_threshold,
                            uint64_t *out_product);

/**
 * `2 C(n-1, k-1)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_prop1_sum_bound(uint32_t n, uint32_t k, uint64_t *out);

/**
 * `C(m,a) + C(m-j,a-j) - C(m-j,a)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_lemma7_bound(uint32_t m, uint32_t a, uint32_t j, uint64_t *out);

/**
 * `C(n-1, t) + C(l-1, t-1)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_mors_bound(uint32_t n, uint32_t l, uint32_t t, uint64_t *out);

/**
 * Config for a single point `(n, k)` with every other field defaulted.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CfStatus cf_sweep_config_default(uint32_t n, uint32_t k, struct CfSweepConfig *out);

/**
 * Runs the sweep for `claim` (`"pyber"`, `"thm2"`, ...). `*out_json` receives
 * a JSON array of verdicts (free with [`cf_string_free`]); `*out_passed`
 * whether every verdict passed.
 *
 * # Safety
 * `claim` must be a NUL-terminated string; `cfg` must point to a config; the
 * out-pointers must be valid for writes.
 */
enum CfStatus cf_verify(const char *claim,
                        const struct CfSweepConfig *cfg,
                        char **out_json,
                        bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSFAM_H */
