#ifndef TFORGE_H
#define TFORGE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define TFORGE_OK 0

/**
 * The input parsed but failed a design or code condition.
 */
#define TFORGE_NOT_VERIFIED 1

#define TFORGE_NULL_ARGUMENT 2

#define TFORGE_INVALID_UTF8 3

#define TFORGE_PARSE_ERROR 4

#define TFORGE_INVALID_INPUT 5

#define TFORGE_NOT_FOUND 6

#define TFORGE_PANIC 7

/**
 * A q-ary code.
 */
typedef struct TforgeCode TforgeCode;

/**
 * A design grid.
 */
typedef struct TforgeDesign TforgeDesign;

typedef struct TforgeCodeStats {
  uint64_t n;
  uint64_t q;
  uint64_t size;
  uint64_t distance;
  bool equitable;
  uint64_t capability;
  bool plotkin_holds;
  bool plotkin_equality;
} TforgeCodeStats;

/**
 * Both sides of the generalized Plotkin bound. Values saturate at u64::MAX.
 */
typedef struct TforgePlotkin {
  uint64_t lhs;
  uint64_t rhs;
  bool holds;
  bool equality;
} TforgePlotkin;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Owned by the library.
 */
const char *tforge_last_error(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
int tforge_design_from_json(const char *json, struct TforgeDesign **out);

/**
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void tforge_design_free(struct TforgeDesign *d);

/**
 * Canonical JSON; release with `tforge_string_free`.
 *
 * # Safety
 * `d` must be a live design and `out` a valid pointer.
 */
int tforge_design_to_json(const struct TforgeDesign *d, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tforge_string_free(char *s);

/**
 * # Safety
 * `d` must be a live design; the out pointers may be null.
 */
int tforge_design_shape(const struct TforgeDesign *d,
                        uint64_t *points,
                        uint64_t *rows,
                        uint64_t *cols);

/**
 * Runs the verifier for the design's kind. Returns `TFORGE_OK` when it
 * passes and `TFORGE_NOT_VERIFIED` with the failed conditions otherwise.
 *
 * # Safety
 * `d` must be a live design.
 */
int tforge_design_verify(const struct TforgeDesign *d);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
int tforge_construct_fq_gbtd(uint64_t q, struct TforgeDesign **out);

/**
 * # Safety
 * `d` must be a live design and `out` a valid pointer.
 */
int tforge_design_to_code(const struct TforgeDesign *d, struct TforgeCode **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
int tforge_code_from_json(const char *json, struct TforgeCode **out);

/**
 * # Safety
 * `c` must be a live code and `out` a valid pointer.
 */
int tforge_code_to_json(const struct TforgeCode *c, char **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void tforge_code_free(struct TforgeCode *c);

/**
 * # Safety
 * `c` must be a live code and `out` a valid pointer.
 */
int tforge_code_stats(const struct TforgeCode *c, struct TforgeCodeStats *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
int tforge_plotkin_check(uint64_t n, uint64_t d, uint64_t q, uint64_t m, struct TforgePlotkin *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TFORGE_H */
