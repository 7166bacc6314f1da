#ifndef FTMV_H
#define FTMV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `FTMV_STATUS_OK` is always zero.
 */
typedef enum FtmvStatus {
  FTMV_STATUS_OK = 0,
  FTMV_STATUS_NULL_POINTER = 1,
  FTMV_STATUS_INVALID_UTF8 = 2,
  FTMV_STATUS_INVALID_ARGUMENT = 3,
  FTMV_STATUS_PARSE_ERROR = 4,
  FTMV_STATUS_NOT_CONNECTED = 5,
  /**
   * The closed form for the requested instance is not known.
   */
  FTMV_STATUS_UNRESOLVED = 6,
  /**
   * The time limit expired; the solution holds a lower bound.
   */
  FTMV_STATUS_ABORTED = 7,
  FTMV_STATUS_PANIC = 8,
} FtmvStatus;

/**
 * Opaque graph handle.
 */
typedef struct FtmvGraph FtmvGraph;

/**
 * Opaque solver result handle.
 */
typedef struct FtmvSolution FtmvSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph from a generator spec such as `"torus:4x5"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FtmvStatus ftmv_graph_from_spec(const char *spec, struct FtmvGraph **out);

/**
 * Parses a graph in the `ftmv-graph 1` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FtmvStatus ftmv_graph_parse(const char *text, struct FtmvGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void ftmv_graph_free(struct FtmvGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ftmv_graph_order(const struct FtmvGraph *g);

/**
 * Number of edges; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ftmv_graph_edge_count(const struct FtmvGraph *g);

/**
 * Serializes the graph; release the string with [`ftmv_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum FtmvStatus ftmv_graph_to_text(const struct FtmvGraph *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void ftmv_string_free(char *s);

/**
 * Computes μ^k exactly. `time_limit` is in seconds; zero, negative or
 * infinite means no limit. On `FTMV_STATUS_ABORTED` the solution is still written and holds
 * the best set found.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum FtmvStatus ftmv_solve(const struct FtmvGraph *g,
                           size_t k,
                           size_t workers,
                           double time_limit,
                           struct FtmvSolution **out);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
size_t ftmv_solution_value(const struct FtmvSolution *s);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
bool ftmv_solution_optimal(const struct FtmvSolution *s);

/**
 * Copies up to `cap` witness vertices (ascending) into `buf` and returns the
 * witness size, so a call with `cap = 0` queries the required length.
 *
 * # Safety
 * `s` must be null or a live handle; `buf` must have room for `cap` values.
 */
size_t ftmv_solution_witness(const struct FtmvSolution *s, size_t *buf, size_t cap);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void ftmv_solution_free(struct FtmvSolution *s);

/**
 * Checks whether `set[0..len]` is a k-ftmv set. When it is not, and
 * `failing_pair` is non-null, the smallest failing pair is written there.
 *
 * # Safety
 * `g` must be a live handle, `set` must hold `len` values, `ok` must be
 * valid, and `failing_pair` must be null or point to two values.
 */
enum FtmvStatus ftmv_verify(const struct FtmvGraph *g,
                            const size_t *set,
                            size_t len,
                            size_t k,
                            bool *ok,
                            size_t *failing_pair);

/**
 * Evaluates a closed form, e.g. family `"grid"` with params `{3, 7}`.
 * Returns `FTMV_STATUS_UNRESOLVED` when no formula is known for the instance.
 *
 * # Safety
 * `family` must be a NUL-terminated string, `params` must hold `len`
 * values and `out` must be valid.
 */
enum FtmvStatus ftmv_formula(const char *family,
                             const size_t *params,
                             size_t len,
                             size_t k,
                             size_t *out);

/**
 * Message for the last failing call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ftmv_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FTMV_H */
