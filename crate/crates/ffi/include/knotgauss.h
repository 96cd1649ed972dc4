#ifndef KNOTGAUSS_H
#define KNOTGAUSS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KgStatus {
  KG_STATUS_OK = 0,
  KG_STATUS_NULL_POINTER = 1,
  KG_STATUS_INVALID_UTF8 = 2,
  KG_STATUS_PARSE = 3,
  KG_STATUS_NOT_REALIZABLE = 4,
  KG_STATUS_SIGN_MISMATCH = 5,
  KG_STATUS_BUDGET = 6,
  KG_STATUS_INVALID_ARGUMENT = 7,
  KG_STATUS_MOVE_NOT_APPLICABLE = 8,
  KG_STATUS_PANIC = 9,
} KgStatus;

/**
 * Opaque knot diagram.
 */
typedef struct KgDiagram KgDiagram;

typedef struct KgInvariants {
  int64_t v2;
  int64_t v3;
  uint64_t lk;
  int64_t writhe;
  uint64_t crossings;
  uint64_t seifert_circles;
  uint64_t genus;
  uint64_t negatives;
} KgInvariants;

typedef struct KgOracle {
  int64_t v2;
  int64_t v3;
  int64_t det_signed;
  int64_t sigma_paper;
} KgOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a signed Gauss code such as `O1+U2+O3+U1+O2+U3+`. On success
 * `*out` owns a new diagram to be released with `kg_diagram_free`.
 *
 * # Safety
 * `code` must be a nul-terminated string and `out` a valid pointer.
 */
enum KgStatus kg_diagram_from_code(const char *code, struct KgDiagram **out);

/**
 * # Safety
 * `d` must come from this library and not be freed twice.
 */
void kg_diagram_free(struct KgDiagram *d);

/**
 * Number of crossings, 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t kg_diagram_crossings(const struct KgDiagram *d);

/**
 * The diagram's signed Gauss code; release with `kg_string_free`.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
char *kg_diagram_code(const struct KgDiagram *d);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void kg_string_free(char *s);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KgStatus kg_diagram_invariants(const struct KgDiagram *d, struct KgInvariants *out);

/**
 * Jones-derived `v2`, `v3` with determinant and signature.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KgStatus kg_diagram_oracle(const struct KgDiagram *d, struct KgOracle *out);

/**
 * Untwisted Whitehead double; `clasp_sign` is `1` or `-1`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KgStatus kg_whitehead_double(const struct KgDiagram *d,
                                  int clasp_sign,
                                  struct KgDiagram **out);

/**
 * Message of the last failure on this thread, or null. Valid until the next call that fails.
 */
const char *kg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTGAUSS_H */
