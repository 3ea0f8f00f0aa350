#ifndef SAMPLAB_H
#define SAMPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every exported function.
 */
typedef enum SamplabStatus {
  SAMPLAB_STATUS_OK = 0,
  SAMPLAB_STATUS_NULL_POINTER = 1,
  SAMPLAB_STATUS_INVALID_ARGUMENT = 2,
  SAMPLAB_STATUS_PARSE = 3,
  SAMPLAB_STATUS_IO = 4,
  SAMPLAB_STATUS_UNREACHABLE_COVERAGE = 5,
  SAMPLAB_STATUS_NON_CONVERGENCE = 6,
  SAMPLAB_STATUS_UNDEFINED = 7,
  SAMPLAB_STATUS_INFEASIBLE = 8,
  SAMPLAB_STATUS_UNSUPPORTED = 9,
  SAMPLAB_STATUS_PANIC = 10,
} SamplabStatus;

/**
 * Opaque graph handle.
 */
typedef struct SamplabGraph SamplabGraph;

/**
 * Opaque sample trace handle.
 */
typedef struct SamplabTrace SamplabTrace;

/**
 * Summary statistics; `assortativity` is NaN when undefined.
 */
typedef struct SamplabGraphStats {
  size_t nodes;
  size_t edges;
  double mean_degree;
  double k2_over_k;
  double assortativity;
} SamplabGraphStats;

/**
 * Message of the last failed call on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *samplab_last_error(void);

/**
 * Loads a whitespace-separated edge list. Unless `raw` is set, duplicate
 * edges and self-loops are dropped and only the largest component is kept.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out_graph` must be writable.
 */
enum SamplabStatus samplab_graph_load(const char *path, bool raw, struct SamplabGraph **out_graph);

/**
 * Builds a multigraph on `node_count` nodes from `edge_count` pairs
 * `(sources[i], targets[i])`.
 *
 * # Safety
 * `sources` and `targets` must hold `edge_count` elements.
 */
enum SamplabStatus samplab_graph_from_edges(size_t node_count,
                                            const size_t *sources,
                                            const size_t *targets,
                                            size_t edge_count,
                                            struct SamplabGraph **out_graph);

/**
 * Configuration-model multigraph realizing `degrees` exactly.
 *
 * # Safety
 * `degrees` must hold `node_count` elements.
 */
enum SamplabStatus samplab_generate_configuration(const size_t *degrees,
                                                  size_t node_count,
                                                  uint64_t rng_seed,
                                                  struct SamplabGraph **out_graph);

/**
 * # Safety
 * `graph` must come from this library and not be freed twice.
 */
void samplab_graph_free(struct SamplabGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle.
 */
enum SamplabStatus samplab_graph_node_count(const struct SamplabGraph *graph, size_t *out_count);

/**
 * # Safety
 * `graph` must be a live handle.
 */
enum SamplabStatus samplab_graph_edge_count(const struct SamplabGraph *graph, size_t *out_count);

/**
 * Degree of internal node `node`; a self-loop counts twice.
 *
 * # Safety
 * `graph` must be a live handle.
 */
enum SamplabStatus samplab_graph_degree(const struct SamplabGraph *graph,
                                        size_t node,
                                        size_t *out_degree);

/**
 * Original edge-list label of internal node `node`.
 *
 * # Safety
 * `graph` must be a live handle.
 */
enum SamplabStatus samplab_graph_label(const struct SamplabGraph *graph,
                                       size_t node,
                                       uint64_t *out_label);

/**
 * # Safety
 * `graph` must be a live handle.
 */
enum SamplabStatus samplab_graph_stats(const struct SamplabGraph *graph,
                                       struct SamplabGraphStats *out_stats);

/**
 * Explores `graph` from internal node `seed`. `technique` is one of
 * `bfs`, `dfs`, `ff`, `sbs`, `rw`, `mhrw`, `wwr`, `stub`. `budget` counts
 * distinct nodes for traversals and steps for walks.
 *
 * # Safety
 * `graph` must be a live handle and `technique` NUL-terminated.
 */
enum SamplabStatus samplab_sample(const struct SamplabGraph *graph,
                                  const char *technique,
                                  size_t seed,
                                  size_t budget,
                                  double burn_probability,
                                  size_t names,
                                  uint64_t rng_seed,
                                  struct SamplabTrace **out_trace);

/**
 * # Safety
 * `trace` must come from this library and not be freed twice.
 */
void samplab_trace_free(struct SamplabTrace *trace);

/**
 * # Safety
 * `trace` must be a live handle.
 */
enum SamplabStatus samplab_trace_len(const struct SamplabTrace *trace, size_t *out_len);

/**
 * Fraction of graph nodes present in the trace.
 *
 * # Safety
 * `trace` must be a live handle.
 */
enum SamplabStatus samplab_trace_coverage(const struct SamplabTrace *trace, double *out_coverage);

/**
 * Copies up to `capacity` node ids and degrees in sample order; either
 * buffer may be null. `out_written` receives the number copied.
 *
 * # Safety
 * Non-null buffers must hold `capacity` elements.
 */
enum SamplabStatus samplab_trace_records(const struct SamplabTrace *trace,
                                         size_t *nodes,
                                         size_t *degrees,
                                         size_t capacity,
                                         size_t *out_written);

/**
 * Expected mean sampled degree of a BFS-like traversal at coverage `f` on
 * a random graph with degree distribution `(degrees[i], probabilities[i])`.
 *
 * # Safety
 * Both arrays must hold `len` elements.
 */
enum SamplabStatus samplab_mean_q_of_f(const size_t *degrees,
                                       const double *probabilities,
                                       size_t len,
                                       double f,
                                       double *out_mean);

/**
 * Stub-index time at which the expected coverage reaches `f`.
 *
 * # Safety
 * Both arrays must hold `len` elements.
 */
enum SamplabStatus samplab_t_of_f(const size_t *degrees,
                                  const double *probabilities,
                                  size_t len,
                                  double f,
                                  double *out_t);

/**
 * Mean degree estimate of a traversal trace corrected for its degree bias,
 * given the true coverage `f_real`.
 *
 * # Safety
 * `trace` must be a live handle.
 */
enum SamplabStatus samplab_bfs_correct(const struct SamplabTrace *trace,
                                       double f_real,
                                       double *out_mean);

/**
 * Mean degree estimate of a random-walk trace with degree re-weighting.
 *
 * # Safety
 * `trace` must be a live handle.
 */
enum SamplabStatus samplab_rw_correct(const struct SamplabTrace *trace, double *out_mean);

#endif  /* SAMPLAB_H */
