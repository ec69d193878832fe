#ifndef MATCHBOUND_H
#define MATCHBOUND_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MbStatus {
  MB_STATUS_OK = 0,
  MB_STATUS_NULL_POINTER = 1,
  MB_STATUS_INVALID_UTF8 = 2,
  MB_STATUS_PARSE = 3,
  MB_STATUS_INVALID = 4,
  MB_STATUS_TOO_LARGE = 5,
  MB_STATUS_BUDGET_EXHAUSTED = 6,
  MB_STATUS_INFEASIBLE = 7,
  MB_STATUS_NUMERIC = 8,
  MB_STATUS_IO = 9,
  MB_STATUS_PANIC = 10,
} MbStatus;

/**
 * Opaque uniform hypergraph (a graph when k = 2).
 */
typedef struct MbGraph MbGraph;

/**
 * Opaque bipartite hypergraph.
 */
typedef struct MbHypergraph MbHypergraph;

/**
 * Opaque Latin square.
 */
typedef struct MbLatinSquare MbLatinSquare;

/**
 * Search limits. `threads = 0` is treated as 1.
 */
typedef struct MbCountOptions {
  uint64_t max_nodes;
  uint32_t threads;
} MbCountOptions;

typedef struct MbBound {
  /**
   * Natural log of the bound.
   */
  double ln_bound;
  double integrand_constant;
  double quadrature_error_estimate;
} MbBound;

typedef struct MbDominance {
  /**
   * `-inf` when there is no matching.
   */
  double ln_count;
  double ln_bound;
  bool vacuous;
  bool pass;
} MbDominance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next `mb_*` call on the same thread.
 */
const char *mb_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mb_version(void);

struct MbCountOptions mb_count_options_default(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mb_string_free(char *s);

/**
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum MbStatus mb_square_parse(const char *text_ptr, struct MbLatinSquare **out);

/**
 * Cayley table of the cyclic group of order `n`.
 *
 * # Safety
 * `out` is writable.
 */
enum MbStatus mb_square_cyclic(size_t n, struct MbLatinSquare **out);

/**
 * # Safety
 * `square` is NULL or a live handle.
 */
size_t mb_square_order(const struct MbLatinSquare *square);

/**
 * # Safety
 * `square` is NULL or a handle from this library, freed at most once.
 */
void mb_square_free(struct MbLatinSquare *square);

/**
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum MbStatus mb_hypergraph_parse(const char *text_ptr, struct MbHypergraph **out);

/**
 * Rows become A-vertices; columns and symbols become B-vertices.
 *
 * # Safety
 * `square` is a live handle; `out` is writable.
 */
enum MbStatus mb_hypergraph_from_square(const struct MbLatinSquare *square,
                                        struct MbHypergraph **out);

/**
 * Hypergraph whose A-perfect matchings are the proper `q`-edge-colorings of
 * `graph`.
 *
 * # Safety
 * `graph` is a live handle; `out` is writable.
 */
enum MbStatus mb_hypergraph_incidence(const struct MbGraph *graph,
                                      size_t q,
                                      struct MbHypergraph **out);

/**
 * Text form of the hypergraph; release with `mb_string_free`.
 *
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum MbStatus mb_hypergraph_to_text(const struct MbHypergraph *h, char **out);

/**
 * # Safety
 * `h` is NULL or a handle from this library, freed at most once.
 */
void mb_hypergraph_free(struct MbHypergraph *h);

/**
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum MbStatus mb_graph_parse(const char *text_ptr, struct MbGraph **out);

/**
 * `copies` disjoint copies of the complete bipartite graph `K_{d,d}`.
 *
 * # Safety
 * `out` is writable.
 */
enum MbStatus mb_graph_kdd(size_t d, size_t copies, struct MbGraph **out);

/**
 * # Safety
 * `g` is NULL or a handle from this library, freed at most once.
 */
void mb_graph_free(struct MbGraph *g);

/**
 * Number of transversals as a decimal string. `opts` may be NULL.
 *
 * # Safety
 * Handles are live; `out` is writable.
 */
enum MbStatus mb_count_transversals(const struct MbLatinSquare *square,
                                    const struct MbCountOptions *opts,
                                    char **out);

/**
 * Number of A-perfect matchings as a decimal string. `opts` may be NULL.
 *
 * # Safety
 * Handles are live; `out` is writable.
 */
enum MbStatus mb_count_matchings(const struct MbHypergraph *h,
                                 const struct MbCountOptions *opts,
                                 char **out);

/**
 * Number of proper `q`-edge-colorings as a decimal string. `opts` may be NULL.
 *
 * # Safety
 * Handles are live; `out` is writable.
 */
enum MbStatus mb_count_colorings(const struct MbGraph *g,
                                 size_t q,
                                 const struct MbCountOptions *opts,
                                 char **out);

/**
 * Finite upper bound on the number of A-perfect matchings.
 *
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum MbStatus mb_finite_bound(const struct MbHypergraph *h, double tol, struct MbBound *out);

/**
 * Exact count compared with the finite bound.
 *
 * # Safety
 * `h` is a live handle; `opts` is NULL or valid; `out` is writable.
 */
enum MbStatus mb_verify_dominance(const struct MbHypergraph *h,
                                  const struct MbCountOptions *opts,
                                  struct MbDominance *out);

/**
 * `∫_0^1 ln(a + q x^k) dx`.
 *
 * # Safety
 * `out` is writable.
 */
enum MbStatus mb_integral_log_poly(double a, double q, size_t k, double tol, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATCHBOUND_H */
