#ifndef SPHEREMCG_H
#define SPHEREMCG_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Enumeration flavor selector.
 */
typedef enum SmcgFlavor {
  SMCG_FLAVOR_ORIENTED = 0,
  SMCG_FLAVOR_EXTENDED = 1,
} SmcgFlavor;

/**
 * Result codes.
 */
typedef enum SmcgStatus {
  SMCG_STATUS_OK = 0,
  SMCG_STATUS_NULL_POINTER = 1,
  SMCG_STATUS_INVALID_ARGUMENT = 2,
  SMCG_STATUS_PARSE_ERROR = 3,
  SMCG_STATUS_GUARD_EXCEEDED = 4,
  SMCG_STATUS_OVERFLOW = 5,
  SMCG_STATUS_INTERNAL = 6,
} SmcgStatus;

/**
 * Opaque context for one puncture count.
 */
typedef struct SmcgContext SmcgContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *smcg_version(void);

/**
 * Copy of the calling thread's last error message, or NULL if none.
 * Release with `smcg_string_free`.
 */
char *smcg_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void smcg_string_free(char *s);

/**
 * Creates a context for the extended group on `n` punctures (`n >= 3`).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SmcgStatus smcg_context_new(uint32_t n, struct SmcgContext **out);

/**
 * Releases a context. NULL is ignored.
 *
 * # Safety
 * `ctx` must come from `smcg_context_new` and not have been freed.
 */
void smcg_context_free(struct SmcgContext *ctx);

/**
 * Puncture count of a context, or 0 for NULL.
 *
 * # Safety
 * `ctx` must be NULL or a live context.
 */
uint32_t smcg_context_n(const struct SmcgContext *ctx);

/**
 * Decides whether two word expressions are equal in the group.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum SmcgStatus smcg_equal(const struct SmcgContext *ctx,
                           const char *u,
                           const char *v,
                           bool *out_equal);

/**
 * Order of a word expression. Writes 0 to `out_order` when the order
 * exceeds `cap` (pass 0 for the default `4n`).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum SmcgStatus smcg_order(const struct SmcgContext *ctx,
                           const char *u,
                           uint32_t cap,
                           uint32_t *out_order);

/**
 * Index of the subgroup generated by `count` word expressions. Returns
 * `Overflow` when a limit is hit first. Zero limits select the defaults.
 *
 * # Safety
 * `subgens` must point to `count` valid strings (it may be NULL when
 * `count` is 0); other pointers must be valid.
 */
enum SmcgStatus smcg_enumerate(const struct SmcgContext *ctx,
                               enum SmcgFlavor flavor,
                               const char *const *subgens,
                               size_t count,
                               size_t max_cosets,
                               double max_time_secs,
                               size_t *out_index);

/**
 * Runs every applicable verification suite for the `count` puncture counts
 * in `ns` and writes the JSON report. `out_exit_code` receives 0 (all pass),
 * 1 (a failure) or 2 (only tolerated overflows).
 *
 * # Safety
 * `ns` must point to `count` values (or be NULL when `count` is 0); output
 * pointers must be valid. Release `*out_json` with `smcg_string_free`.
 */
enum SmcgStatus smcg_verify_json(const uint32_t *ns,
                                 size_t count,
                                 int32_t *out_exit_code,
                                 char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHEREMCG_H */
