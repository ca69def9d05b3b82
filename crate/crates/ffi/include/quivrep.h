#ifndef QUIVREP_H
#define QUIVREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QuivrepStatus {
  QUIVREP_STATUS_OK = 0,
  QUIVREP_STATUS_DOMAIN = 1,
  QUIVREP_STATUS_UNSUPPORTED = 2,
  QUIVREP_STATUS_SHAPE = 3,
  QUIVREP_STATUS_PARSE = 4,
  QUIVREP_STATUS_NULL_ARGUMENT = 5,
  QUIVREP_STATUS_INTERNAL = 6,
} QuivrepStatus;

/**
 * A quiver morphism (`f`, `g` or a finite table).
 */
typedef struct QuivrepMorphism QuivrepMorphism;

/**
 * A representation.
 */
typedef struct QuivrepRep QuivrepRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL.
 */
const char *quivrep_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void quivrep_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QuivrepStatus quivrep_rep_from_json(const char *json, struct QuivrepRep **out);

/**
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum QuivrepStatus quivrep_rep_to_json(const struct QuivrepRep *rep, char **out);

/**
 * # Safety
 * `rep` must come from this library, or be NULL.
 */
void quivrep_rep_free(struct QuivrepRep *rep);

/**
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum QuivrepStatus quivrep_rep_total_dim(const struct QuivrepRep *rep, size_t *out);

/**
 * Number of violated generators of the quiver's standard relations.
 *
 * # Safety
 * `rep` must be a live handle and `violations` writable.
 */
enum QuivrepStatus quivrep_check_relations(const struct QuivrepRep *rep, size_t *violations);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QuivrepStatus quivrep_hom_dim(const struct QuivrepRep *v,
                                   const struct QuivrepRep *u,
                                   size_t *out);

/**
 * Dimension of `End(V)` and of its radical.
 *
 * # Safety
 * `rep` must be a live handle; `dim` and `radical_dim` writable.
 */
enum QuivrepStatus quivrep_end_dims(const struct QuivrepRep *rep, size_t *dim, size_t *radical_dim);

/**
 * Writes 1 (indecomposable), 0 (decomposable) or -1 (uncertified).
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum QuivrepStatus quivrep_is_indecomposable(const struct QuivrepRep *rep, uint64_t seed, int *out);

/**
 * Writes 1 (isomorphic), 0 (not) or -1 (undecided).
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QuivrepStatus quivrep_iso(const struct QuivrepRep *v,
                               const struct QuivrepRep *u,
                               uint64_t seed,
                               int *out);

/**
 * Summands as a JSON array of `{"rep": ..., "certified": bool}`.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum QuivrepStatus quivrep_decompose(const struct QuivrepRep *rep, uint64_t seed, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QuivrepStatus quivrep_morphism_from_json(const char *json, struct QuivrepMorphism **out);

/**
 * # Safety
 * `phi` must come from this library, or be NULL.
 */
void quivrep_morphism_free(struct QuivrepMorphism *phi);

/**
 * Left extension, or right extension when `right` is nonzero.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QuivrepStatus quivrep_pushforward(const struct QuivrepMorphism *phi,
                                       const struct QuivrepRep *rep,
                                       int right,
                                       struct QuivrepRep **out);

/**
 * Covering check over `[a, b]` (the square `[a, b]^2` on the grid); writes 1 or 0.
 *
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum QuivrepStatus quivrep_is_covering(const struct QuivrepMorphism *phi,
                                       int64_t a,
                                       int64_t b,
                                       int *out);

/**
 * Runs the full check suite; writes the JSON report and its exit status.
 *
 * # Safety
 * `report` and `exit_status` must be writable.
 */
enum QuivrepStatus quivrep_suite(uint64_t seed, char **report, int *exit_status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVREP_H */
