#ifndef SIGSYNTAX_H
#define SIGSYNTAX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. The nonzero codes mirror the command-line exit codes
 * where they overlap.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_LAW_FAILURE = 1,
  SS_STATUS_PARSE_ERROR = 2,
  SS_STATUS_CAP_EXCEEDED = 3,
  SS_STATUS_UNKNOWN_REP = 4,
  SS_STATUS_NULL_POINTER = 5,
  SS_STATUS_INVALID_UTF8 = 6,
  SS_STATUS_ILL_FORMED = 7,
  SS_STATUS_PANIC = 8,
} SsStatus;

/**
 * A validated signature.
 */
typedef struct SsSignature SsSignature;

/**
 * A term together with the size of the context it lives in.
 */
typedef struct SsTerm SsTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *ss_last_error(void);

/**
 * Parses and validates a signature file.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SsStatus ss_signature_parse(const char *source, struct SsSignature **out);

/**
 * # Safety
 * `sig` must be null or a handle from [`ss_signature_parse`] not yet freed.
 */
void ss_signature_free(struct SsSignature *sig);

/**
 * Number of operations, or 0 for a null handle.
 *
 * # Safety
 * `sig` must be null or a live handle.
 */
size_t ss_signature_op_count(const struct SsSignature *sig);

/**
 * Parses an s-expression term and checks it in a context of `ctx` variables.
 *
 * # Safety
 * `sig` must be a live handle, `source` a NUL-terminated string and `out`
 * a valid pointer.
 */
enum SsStatus ss_term_parse(const struct SsSignature *sig,
                            const char *source,
                            size_t ctx,
                            struct SsTerm **out);

/**
 * # Safety
 * `term` must be null or a live term handle.
 */
void ss_term_free(struct SsTerm *term);

/**
 * Context size of a term, or 0 for a null handle.
 *
 * # Safety
 * `term` must be null or a live term handle.
 */
size_t ss_term_context(const struct SsTerm *term);

/**
 * The s-expression form of a term, or null for a null handle.
 *
 * # Safety
 * `term` must be null or a live term handle.
 */
char *ss_term_to_string(const struct SsTerm *term);

/**
 * Substitutes `images[i]` for variable `i` of `term`. All images must live
 * in the same context, which becomes the context of the result.
 *
 * # Safety
 * `term` must be a live handle, `images` must point to `count` live
 * handles (or be null when `count` is 0), and `out` must be valid.
 */
enum SsStatus ss_term_bind(const struct SsTerm *term,
                           const struct SsTerm *const *images,
                           size_t count,
                           struct SsTerm **out);

/**
 * Evaluates a term into a built-in representation (`self`, `lambda-ref`,
 * `lambda-join-ref`) and returns the printed value.
 *
 * # Safety
 * Handles must be live, `rep` NUL-terminated and `out` valid.
 */
enum SsStatus ss_eval(const struct SsSignature *sig,
                      const struct SsTerm *term,
                      const char *rep,
                      char **out);

/**
 * Number of terms in context `ctx` up to `depth`, failing with
 * `CapExceeded` beyond `cap`.
 *
 * # Safety
 * `sig` must be a live handle and `out` valid.
 */
enum SsStatus ss_enum_count(const struct SsSignature *sig,
                            size_t ctx,
                            size_t depth,
                            size_t cap,
                            size_t *out);

/**
 * Runs the full law suite with default bounds and `samples` samples per
 * law. Writes the number of failing laws to `failed_laws` and returns
 * `LawFailure` when it is nonzero.
 *
 * # Safety
 * `sig` must be a live handle and `failed_laws` valid.
 */
enum SsStatus ss_check(const struct SsSignature *sig,
                       size_t samples,
                       uint64_t seed,
                       size_t *failed_laws);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ss_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGSYNTAX_H */
