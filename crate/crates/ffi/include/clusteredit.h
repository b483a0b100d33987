#ifndef CLUSTEREDIT_H
#define CLUSTEREDIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CeGraphClass {
  CE_GRAPH_CLASS_TRIVIALLY_PERFECT = 0,
  CE_GRAPH_CLASS_COGRAPH = 1,
  CE_GRAPH_CLASS_NEITHER = 2,
} CeGraphClass;

typedef enum CeStatus {
  CE_STATUS_OK = 0,
  CE_STATUS_NULL_POINTER = 1,
  CE_STATUS_INVALID_INPUT = 2,
  CE_STATUS_PARSE = 3,
  CE_STATUS_NOT_COGRAPH = 4,
  CE_STATUS_NOT_TRIVIALLY_PERFECT = 5,
  CE_STATUS_INFEASIBLE = 6,
  CE_STATUS_BUDGET_EXCEEDED = 7,
  CE_STATUS_PANIC = 8,
} CeStatus;

/**
 * Opaque solved clustering with its edit cost.
 */
typedef struct CeClustering CeClustering;

/**
 * Opaque undirected graph.
 */
typedef struct CeGraph CeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *ce_last_error_message(void);

/**
 * Edgeless graph on `n` vertices.
 */
struct CeGraph *ce_graph_new(uintptr_t n);

/**
 * Parses the text graph format (`n m` header, then `u v` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum CeStatus ce_graph_parse(const char *text, struct CeGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void ce_graph_free(struct CeGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uintptr_t ce_graph_vertex_count(const struct CeGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
enum CeStatus ce_graph_add_edge(struct CeGraph *g, uintptr_t u, uintptr_t v);

/**
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CeStatus ce_recognize(const struct CeGraph *g, enum CeGraphClass *out);

/**
 * Optimal Cluster Editing on a trivially perfect graph.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CeStatus ce_solve_tpg(const struct CeGraph *g, struct CeClustering **out);

/**
 * p-Cluster Editing on a cograph, with exactly `p` clusters when `exact`
 * is nonzero and at most `p` otherwise.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CeStatus ce_solve_cograph_p(const struct CeGraph *g,
                                 uintptr_t p,
                                 bool exact,
                                 struct CeClustering **out);

/**
 * Exhaustive optimum, enumerating at most `budget` partitions.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CeStatus ce_solve_oracle(const struct CeGraph *g, uint64_t budget, struct CeClustering **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void ce_clustering_free(struct CeClustering *c);

/**
 * # Safety
 * `c` must be a live clustering handle.
 */
uint64_t ce_clustering_cost(const struct CeClustering *c);

/**
 * Number of clusters.
 *
 * # Safety
 * `c` must be a live clustering handle.
 */
uintptr_t ce_clustering_len(const struct CeClustering *c);

/**
 * Writes the cluster index of each vertex into `buf`, which must hold
 * `len` entries with `len` equal to the vertex count.
 *
 * # Safety
 * `c` must be a live clustering handle and `buf` valid for `len` writes.
 */
enum CeStatus ce_clustering_assignment(const struct CeClustering *c, uintptr_t *buf, uintptr_t len);

/**
 * Canonical JSON `{"cost":..,"clusters":[..]}`; free with `ce_string_free`.
 *
 * # Safety
 * `c` must be a live clustering handle.
 */
char *ce_clustering_to_json(const struct CeClustering *c);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ce_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLUSTEREDIT_H */
