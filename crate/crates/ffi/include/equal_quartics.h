/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef EQUAL_QUARTICS_H
#define EQUAL_QUARTICS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Field selector for [`eq4_list_field`].
typedef enum Eq4Field {
  EQ4_FIELD_A = 0,
  EQ4_FIELD_B = 1,
  EQ4_FIELD_C = 2,
  EQ4_FIELD_D = 3,
  EQ4_FIELD_WEIGHT = 4,
  EQ4_FIELD_METHOD = 5,
} Eq4Field;

// Result code of every call.
typedef enum Eq4Status {
  EQ4_STATUS_OK = 0,
  EQ4_STATUS_NULL_POINTER = 1,
  EQ4_STATUS_INVALID_UTF8 = 2,
  EQ4_STATUS_PARSE = 3,
  EQ4_STATUS_INVALID_ARGUMENT = 4,
  EQ4_STATUS_OUT_OF_RANGE = 5,
  EQ4_STATUS_IO = 6,
  EQ4_STATUS_OVERFLOW = 7,
  EQ4_STATUS_PANIC = 8,
} Eq4Status;

// Normalized solutions owned by the library.
typedef struct Eq4SolutionList Eq4SolutionList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *eq4_last_error(void);

// Checks A⁴ + h·B⁴ = C⁴ + h·D⁴ exactly for signed decimal strings.
//
// # Safety
// The string arguments must be null or NUL-terminated; `out_holds` must be
// null or writable.
enum Eq4Status eq4_verify(uint64_t h,
                          const char *a,
                          const char *b,
                          const char *c,
                          const char *d,
                          bool *out_holds);

// Exhaustive search over C ≤ c_max, a_min ≤ A ≤ a_max, B, D ≤ b_max.
//
// # Safety
// `out` must be null or writable.
enum Eq4Status eq4_brute_search(uint64_t h,
                                uint64_t a_min,
                                uint64_t a_max,
                                uint64_t b_max,
                                uint64_t c_max,
                                struct Eq4SolutionList **out);

// Sorted-sum collision search with distinct bucket primes p, q ≡ 3 (mod 4).
//
// # Safety
// `out` must be null or writable.
enum Eq4Status eq4_meet_search(uint64_t h,
                               uint64_t p,
                               uint64_t q,
                               uint64_t a_max,
                               uint64_t b_max,
                               struct Eq4SolutionList **out);

// Evaluates a named family. An inadmissible parameter choice yields an
// empty list, not an error.
//
// # Safety
// `name` must be NUL-terminated; `params` must point to `len` values.
enum Eq4Status eq4_family(const char *name,
                          const int64_t *params,
                          size_t len,
                          struct Eq4SolutionList **out);

// Walks the multiples of the point (x, y) on the curve for (h, a, b).
// Coordinates are decimal "num/den" strings.
//
// # Safety
// `x` and `y` must be NUL-terminated; `out` must be null or writable.
enum Eq4Status eq4_elliptic(uint64_t h,
                            uint64_t a,
                            uint64_t b,
                            const char *x,
                            const char *y,
                            uint64_t max_multiple,
                            struct Eq4SolutionList **out);

// Runs the strategy ladder for one h. `config_toml` uses the same keys as
// the CLI config file and may be null for defaults. The list is ordered
// with the smallest solution first and is empty when h stays unsolved.
//
// # Safety
// `config_toml` must be null or NUL-terminated; `out` must be null or writable.
enum Eq4Status eq4_search_h(uint64_t h, const char *config_toml, struct Eq4SolutionList **out);

// Re-verifies a record file, reporting how many lines were checked and how
// many failed.
//
// # Safety
// `path` must be NUL-terminated; the outputs must be null or writable.
enum Eq4Status eq4_verify_file(const char *path, size_t *out_checked, size_t *out_failed);

// Number of solutions in the list; 0 for null.
//
// # Safety
// `list` must be null or a live list from this library.
size_t eq4_list_len(const struct Eq4SolutionList *list);

// Writes the h of entry `index` to `out_h`.
//
// # Safety
// `list` must be null or live; `out_h` must be null or writable.
enum Eq4Status eq4_list_h(const struct Eq4SolutionList *list, size_t index, uint64_t *out_h);

// Returns a field of entry `index` as a newly allocated decimal string
// (or method name), or null on error. Free it with [`eq4_string_free`].
//
// # Safety
// `list` must be null or a live list from this library.
char *eq4_list_field(const struct Eq4SolutionList *list, size_t index, enum Eq4Field field);

// # Safety
// `list` must be null or a list from this library not yet freed.
void eq4_list_free(struct Eq4SolutionList *list);

// # Safety
// `s` must be null or a string from [`eq4_list_field`] not yet freed.
void eq4_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUAL_QUARTICS_H */
