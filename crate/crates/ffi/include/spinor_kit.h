#ifndef SPINOR_KIT_H
#define SPINOR_KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SkStatus {
  SkStatus_Ok = 0,
  SkStatus_NullPointer = 1,
  SkStatus_InvalidUtf8 = 2,
  SkStatus_Parse = 3,
  SkStatus_Eval = 4,
  SkStatus_UnknownSuite = 5,
  SkStatus_InvalidArgument = 6,
  SkStatus_DivisionByZero = 7,
  SkStatus_Panic = 8,
} SkStatus;

/**
 * Outcome of a property-suite run.
 */
typedef struct SkReport SkReport;

/**
 * Element of ℚ(i, √2).
 */
typedef struct SkScalar SkScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *sk_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, freed once.
 */
void sk_string_free(char *s);

/**
 * Parses a scalar such as `"1/2+i-3*r2"`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SkStatus sk_scalar_parse(const char *text, struct SkScalar **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, freed once.
 */
void sk_scalar_free(struct SkScalar *s);

/**
 * `*out = a + b`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum SkStatus sk_scalar_add(const struct SkScalar *a,
                            const struct SkScalar *b,
                            struct SkScalar **out);

/**
 * `*out = a − b`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum SkStatus sk_scalar_sub(const struct SkScalar *a,
                            const struct SkScalar *b,
                            struct SkScalar **out);

/**
 * `*out = a · b`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum SkStatus sk_scalar_mul(const struct SkScalar *a,
                            const struct SkScalar *b,
                            struct SkScalar **out);

/**
 * `*out = a / b`; fails with `SkStatus_DivisionByZero` when `b = 0`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum SkStatus sk_scalar_div(const struct SkScalar *a,
                            const struct SkScalar *b,
                            struct SkScalar **out);

/**
 * Exact equality; `*out` is set to 1 or 0.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum SkStatus sk_scalar_equal(const struct SkScalar *a, const struct SkScalar *b, int32_t *out);

/**
 * Canonical text of a scalar, or null for a null handle.
 *
 * # Safety
 * `s` must be null or a valid handle.
 */
char *sk_scalar_to_string(const struct SkScalar *s);

/**
 * Evaluates a program; `*out` receives the printed results, one per line.
 *
 * # Safety
 * `program` must be a nul-terminated string; `out` must be writable.
 */
enum SkStatus sk_eval(const char *program, char **out);

/**
 * Runs a named property suite (or `"all"`).
 *
 * # Safety
 * `suite` must be a nul-terminated string; `out` must be writable.
 */
enum SkStatus sk_run_suite(const char *suite,
                           uint64_t seed,
                           uint64_t trials,
                           struct SkReport **out);

/**
 * Total number of failed checks; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a valid handle.
 */
uintptr_t sk_report_failures(const struct SkReport *r);

/**
 * Sorted-key JSON text of a report, or null for a null handle.
 *
 * # Safety
 * `r` must be null or a valid handle.
 */
char *sk_report_json(const struct SkReport *r);

/**
 * # Safety
 * `r` must be null or a handle from this library, freed once.
 */
void sk_report_free(struct SkReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINOR_KIT_H */
