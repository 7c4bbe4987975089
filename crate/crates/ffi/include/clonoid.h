#ifndef CLONOID_H
#define CLONOID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Status codes; 0 to 3 match the command line exit codes.
 */
typedef enum ClonoidStatus {
  CLONOID_STATUS_OK = 0,
  /**
   * A verification suite ran and some check failed.
   */
  CLONOID_STATUS_VERIFICATION_FAILED = 1,
  CLONOID_STATUS_INPUT_ERROR = 2,
  CLONOID_STATUS_BUDGET_EXCEEDED = 3,
  CLONOID_STATUS_NULL_POINTER = 4,
  CLONOID_STATUS_INVALID_UTF8 = 5,
  CLONOID_STATUS_PANIC = 6,
} ClonoidStatus;

typedef struct ClonoidAlgebra ClonoidAlgebra;

typedef struct ClonoidFamily ClonoidFamily;

typedef struct ClonoidFunction ClonoidFunction;

typedef struct ClonoidPairs ClonoidPairs;

typedef struct ClonoidSet ClonoidSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *clonoid_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void clonoid_string_free(char *s);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void clonoid_algebra_free(struct ClonoidAlgebra *p);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void clonoid_function_free(struct ClonoidFunction *p);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void clonoid_family_free(struct ClonoidFamily *p);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void clonoid_pairs_free(struct ClonoidPairs *p);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void clonoid_set_free(struct ClonoidSet *p);

/**
 * Parses an algebra in the text format, or a Boolean algebra name such as
 * `meet`, `not-0` or `maj`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ClonoidStatus clonoid_algebra_parse(const char *text, struct ClonoidAlgebra **out);

/**
 * Parses text holding exactly one `fn` line.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ClonoidStatus clonoid_function_parse(const char *text, struct ClonoidFunction **out);

/**
 * Parses `fn` lines into a generator family; all must share source and
 * target sizes.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ClonoidStatus clonoid_family_parse(const char *text, struct ClonoidFamily **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ClonoidStatus clonoid_pairs_parse(const char *text, struct ClonoidPairs **out);

/**
 * Number of members of a set, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live set handle.
 */
size_t clonoid_set_len(const struct ClonoidSet *set);

/**
 * Writes the set in the text format.
 *
 * # Safety
 * `set` must be a live set handle; `out` must be writable.
 */
enum ClonoidStatus clonoid_set_to_text(const struct ClonoidSet *set, char **out);

/**
 * Classifies a two-element algebra; writes a JSON report. `budget` 0 means
 * the default.
 *
 * # Safety
 * `algebra` must be a live handle; `json_out` must be writable.
 */
enum ClonoidStatus clonoid_classify(const struct ClonoidAlgebra *algebra,
                                    size_t nu_cap,
                                    size_t budget_size,
                                    char **json_out);

/**
 * Whether `function` preserves every pair in `pairs`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ClonoidStatus clonoid_is_polymorphism(const struct ClonoidFunction *function,
                                           const struct ClonoidPairs *pairs,
                                           bool *out);

/**
 * All `arity`-ary functions preserving every pair.
 *
 * # Safety
 * `pairs` must be a live handle; `out` must be writable.
 */
enum ClonoidStatus clonoid_pol(const struct ClonoidPairs *pairs,
                               size_t arity,
                               size_t budget_size,
                               struct ClonoidSet **out);

/**
 * The `arity` slice of the clonoid generated by `family` over `algebra`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ClonoidStatus clonoid_generate(const struct ClonoidFamily *family,
                                    const struct ClonoidAlgebra *algebra,
                                    size_t arity,
                                    size_t budget_size,
                                    struct ClonoidSet **out);

/**
 * Whether `function` lies in the clonoid generated by `family`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ClonoidStatus clonoid_member(const struct ClonoidFunction *function,
                                  const struct ClonoidFamily *family,
                                  const struct ClonoidAlgebra *algebra,
                                  size_t budget_size,
                                  bool *out);

/**
 * Writes `{"blocker": [..]}` or `{"blocker": null}`.
 *
 * # Safety
 * `algebra` must be a live handle; `json_out` must be writable.
 */
enum ClonoidStatus clonoid_blocker(const struct ClonoidAlgebra *algebra, char **json_out);

/**
 * Runs a verification suite. `params` holds whitespace-separated
 * `key=value` items and may be null. Writes the JSON report and returns
 * `Ok`, `VerificationFailed` or `BudgetExceeded` according to it.
 *
 * # Safety
 * `suite` must be a NUL-terminated string, `params` null or one;
 * `json_out` must be writable.
 */
enum ClonoidStatus clonoid_verify(const char *suite,
                                  const char *params,
                                  size_t budget_size,
                                  char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLONOID_H */
