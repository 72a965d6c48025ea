#ifndef ASSOCIAHEDRA_H
#define ASSOCIAHEDRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AssocStatus {
  ASSOC_STATUS_OK = 0,
  ASSOC_STATUS_NULL_POINTER = 1,
  ASSOC_STATUS_INVALID_ARGUMENT = 2,
  ASSOC_STATUS_OUT_OF_RANGE = 3,
  ASSOC_STATUS_CERTIFICATION = 4,
  ASSOC_STATUS_PARSE = 5,
  ASSOC_STATUS_INTERNAL = 6,
  ASSOC_STATUS_BUFFER_TOO_SMALL = 7,
  ASSOC_STATUS_PANIC = 8,
} AssocStatus;

typedef enum AssocConstruction {
  ASSOC_CONSTRUCTION_SECONDARY = 0,
  ASSOC_CONSTRUCTION_CLUSTER = 1,
  ASSOC_CONSTRUCTION_MINKOWSKI = 2,
} AssocConstruction;

typedef enum AssocVerdict {
  ASSOC_VERDICT_NON_EQUIVALENT = 0,
  ASSOC_VERDICT_EQUIVALENT = 1,
  ASSOC_VERDICT_INCONCLUSIVE = 2,
} AssocVerdict;

/**
 * A built realization together with its parameters.
 */
typedef struct AssocPolytope AssocPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next failing call.
 */
const char *assoc_last_error(void);

/**
 * Builds a realization with default parameters.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum AssocStatus assoc_build_default(enum AssocConstruction construction,
                                     size_t n,
                                     struct AssocPolytope **out);

/**
 * Builds a realization from a JSON parameter document.
 *
 * # Safety
 * `params_json` must be a nul-terminated string and `out` valid for writes.
 */
enum AssocStatus assoc_build_with_params(enum AssocConstruction construction,
                                         const char *params_json,
                                         struct AssocPolytope **out);

/**
 * Loads a polytope file document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for writes.
 */
enum AssocStatus assoc_polytope_from_json(const char *json, struct AssocPolytope **out);

/**
 * Serializes to the polytope file format. Free the result with `assoc_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum AssocStatus assoc_polytope_to_json(const struct AssocPolytope *p, char **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void assoc_polytope_free(struct AssocPolytope *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void assoc_string_free(char *s);

/**
 * Dimension `n`, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t assoc_polytope_n(const struct AssocPolytope *p);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t assoc_polytope_vertex_count(const struct AssocPolytope *p);

/**
 * Number of certified facets.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum AssocStatus assoc_polytope_facet_count(const struct AssocPolytope *p, size_t *out);

/**
 * Writes parallel facet pairs as `a1, b1, a2, b2` diagonal endpoints, four
 * entries per pair, into `buf` of `capacity` entries.
 *
 * `count` receives the number of pairs. If `buf` is too small nothing is
 * written and `ASSOC_STATUS_BUFFER_TOO_SMALL` is returned; `buf` may be
 * null when `capacity` is 0 to query the count.
 *
 * # Safety
 * `p` must be a live handle, `buf` valid for `capacity` writes, `count` valid for writes.
 */
enum AssocStatus assoc_parallel_pairs(const struct AssocPolytope *p,
                                      size_t *buf,
                                      size_t capacity,
                                      size_t *count);

/**
 * The analysis report as JSON. Free the result with `assoc_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum AssocStatus assoc_analyze_json(const struct AssocPolytope *p, char **out);

/**
 * Decides affine equivalence. `report_json` may be null; otherwise it
 * receives the report, to be freed with `assoc_string_free`.
 *
 * # Safety
 * `a` and `b` must be live handles, `verdict` valid for writes, `report_json` null or valid for writes.
 */
enum AssocStatus assoc_compare(const struct AssocPolytope *a,
                               const struct AssocPolytope *b,
                               enum AssocVerdict *verdict,
                               char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASSOCIAHEDRA_H */
