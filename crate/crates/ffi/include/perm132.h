#ifndef PERM132_H
#define PERM132_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Perm132Mode {
  PERM132_MODE_AVOID = 0,
  PERM132_MODE_ONCE = 1,
} Perm132Mode;

// Status codes. Values 1 to 3 and 5 agree with the CLI exit codes.
typedef enum Perm132Status {
  PERM132_STATUS_OK = 0,
  PERM132_STATUS_INVALID_ARGUMENT = 1,
  PERM132_STATUS_UNSUPPORTED = 2,
  PERM132_STATUS_NOT_IN132_CLASS = 3,
  PERM132_STATUS_INTERNAL = 5,
  PERM132_STATUS_NULL_POINTER = 6,
  // Oracle cap, output buffer too small, or a coefficient outside `i64`.
  PERM132_STATUS_LIMIT_EXCEEDED = 7,
  PERM132_STATUS_PANIC = 8,
} Perm132Status;

// Engine with its own memo tables.
typedef struct Perm132Engine Perm132Engine;

typedef struct Perm132RationalFunction Perm132RationalFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread; do not free it.
const char *perm132_last_error_message(void);

struct Perm132Engine *perm132_engine_new(void);

// # Safety
// `engine` is null or came from [`perm132_engine_new`] and was not freed.
void perm132_engine_free(struct Perm132Engine *engine);

// `F_τ` for the pattern `values[0..len]` (one-line notation, values `1..=len`).
//
// # Safety
// `engine` is a live handle, `values` points to `len` readable values
// (may be null when `len == 0`), `out` is writable.
enum Perm132Status perm132_avoid_gf(const struct Perm132Engine *engine,
                                    const uint32_t *values,
                                    size_t len,
                                    struct Perm132RationalFunction **out);

// `G_τ`, counting permutations that contain the pattern exactly once.
//
// # Safety
// As for [`perm132_avoid_gf`].
enum Perm132Status perm132_once_gf(const struct Perm132Engine *engine,
                                   const uint32_t *values,
                                   size_t len,
                                   struct Perm132RationalFunction **out);

// # Safety
// `f` is null or a handle returned by this library and not yet freed.
void perm132_rf_free(struct Perm132RationalFunction *f);

// `{"numerator":[..],"denominator":[..]}` with decimal-string coefficients,
// lowest degree first.
//
// # Safety
// `f` is a live handle and `out` is writable.
enum Perm132Status perm132_rf_to_json(const struct Perm132RationalFunction *f, char **out);

// Plain text such as `(1 - x) / (1 - 2x)`.
//
// # Safety
// `f` is a live handle and `out` is writable.
enum Perm132Status perm132_rf_to_plain(const struct Perm132RationalFunction *f, char **out);

// Parses the JSON form written by [`perm132_rf_to_json`].
//
// # Safety
// `json` is a NUL-terminated string and `out` is writable.
enum Perm132Status perm132_rf_from_json(const char *json, struct Perm132RationalFunction **out);

// Writes the coefficients of `x^0..=x^terms` into `buf`, which must hold
// `terms + 1` values.
//
// # Safety
// `f` is a live handle and `buf` points to `buf_len` writable values.
enum Perm132Status perm132_rf_series(const struct Perm132RationalFunction *f,
                                     size_t terms,
                                     int64_t *buf,
                                     size_t buf_len);

// Brute-force count over `S_n(132)`: permutations avoiding the pattern
// (`mode = Avoid`) or containing it exactly once (`mode = Once`).
//
// # Safety
// `values` points to `len` readable values and `out` is writable.
enum Perm132Status perm132_oracle_count(const uint32_t *values,
                                        size_t len,
                                        enum Perm132Mode mode,
                                        size_t n,
                                        uint64_t *out);

// # Safety
// `s` is null or a string returned by this library and not yet freed.
void perm132_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERM132_H */
