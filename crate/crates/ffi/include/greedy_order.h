#ifndef GREEDY_ORDER_H
#define GREEDY_ORDER_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum GroStatus {
  GRO_STATUS_OK = 0,
  GRO_STATUS_NULL_POINTER = 1,
  GRO_STATUS_INVALID_ARGUMENT = 2,
  GRO_STATUS_DOMAIN = 3,
  GRO_STATUS_BUDGET = 4,
  GRO_STATUS_SAMPLING = 5,
  GRO_STATUS_PARSE = 6,
  GRO_STATUS_BUFFER_TOO_SMALL = 7,
  GRO_STATUS_PANIC = 8,
} GroStatus;

/**
 * Termination rule of the token traversal.
 */
typedef enum GroVariant {
  GRO_VARIANT_STANDARD = 0,
  GRO_VARIANT_ORDER_EQUALS_N = 1,
} GroVariant;

/**
 * Opaque communication graph.
 */
typedef struct GroGraph GroGraph;

/**
 * Opaque agent ordering.
 */
typedef struct GroOrdering GroOrdering;

/**
 * Opaque coverage problem.
 */
typedef struct GroProblem GroProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Writes the message of the last failure on this thread into `buf`
 * (NUL-terminated, truncated to `len`). Returns the full message length in
 * bytes, or 0 when no error has been recorded.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t gro_last_error(char *buf, size_t len);

/**
 * Creates a graph with `n` vertices and no edges.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_graph_new(size_t n, bool directed, struct GroGraph **out);

/**
 * Adds the edge (or arc) `u -> v`.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
enum GroStatus gro_graph_add_edge(struct GroGraph *g, size_t u, size_t v);

/**
 * Parses the text edge-list format (`n <count> <directed|undirected>` then `u v` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` a valid pointer.
 */
enum GroStatus gro_graph_parse(const char *text, struct GroGraph **out);

/**
 * Renders the graph in edge-list format. Free the string with [`gro_string_free`].
 *
 * # Safety
 * `g` must be a live graph handle; `out` a valid pointer.
 */
enum GroStatus gro_graph_to_string(const struct GroGraph *g, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, freed once.
 */
void gro_string_free(char *s);

/**
 * Releases a graph handle.
 *
 * # Safety
 * `g` must be null or a handle from this library, freed once.
 */
void gro_graph_free(struct GroGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t gro_graph_vertex_count(const struct GroGraph *g);

/**
 * Number of edges (arcs for a directed graph), or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t gro_graph_edge_count(const struct GroGraph *g);

/**
 * Whether every vertex reaches every other (strongly, when directed).
 *
 * # Safety
 * `g` must be a live graph handle; `out` a valid pointer.
 */
enum GroStatus gro_graph_is_connected(const struct GroGraph *g, bool *out);

/**
 * Hop distance from `s` to `d`. Fails with `Domain` when `d` is unreachable.
 *
 * # Safety
 * `g` must be a live graph handle; `out` a valid pointer.
 */
enum GroStatus gro_graph_hops(const struct GroGraph *g, size_t s, size_t d, size_t *out);

/**
 * Largest hop distance over all pairs; requires a connected graph.
 *
 * # Safety
 * `g` must be a live graph handle; `out` a valid pointer.
 */
enum GroStatus gro_graph_diameter(const struct GroGraph *g, size_t *out);

/**
 * Path on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_line(size_t n, struct GroGraph **out);

/**
 * Star on `n` vertices centered at vertex 0.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_star(size_t n, struct GroGraph **out);

/**
 * Complete undirected graph on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_complete(size_t n, struct GroGraph **out);

/**
 * Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_directed_cycle(size_t n, struct GroGraph **out);

/**
 * Strongly connected digraph whose best ordering costs the most among digraphs of its size.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_dn(size_t n, struct GroGraph **out);

/**
 * Erdos-Renyi G(n, p) from `seed`. With `connected`, draws are rejected
 * until the sample is connected (failing with `Budget` after many attempts).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_gen_erdos_renyi(size_t n,
                                   double p,
                                   uint64_t seed,
                                   bool connected,
                                   struct GroGraph **out);

/**
 * Builds an ordering from `labels[v]`, the 1-based label of vertex `v`.
 *
 * # Safety
 * `labels` must point to `n` readable values; `out` must be a valid pointer.
 */
enum GroStatus gro_ordering_from_labels(const size_t *labels, size_t n, struct GroOrdering **out);

/**
 * Uniformly random ordering of `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_ordering_random(size_t n, uint64_t seed, struct GroOrdering **out);

/**
 * Number of vertices covered, or 0 for a null handle.
 *
 * # Safety
 * `o` must be null or a live ordering handle.
 */
size_t gro_ordering_len(const struct GroOrdering *o);

/**
 * Copies the labels (indexed by vertex) into `buf`, which must hold `len >= n` values.
 *
 * # Safety
 * `o` must be a live ordering handle; `buf` must point to `len` writable values.
 */
enum GroStatus gro_ordering_labels(const struct GroOrdering *o, size_t *buf, size_t len);

/**
 * Copies the vertices in label order into `buf`, which must hold `len >= n` values.
 *
 * # Safety
 * `o` must be a live ordering handle; `buf` must point to `len` writable values.
 */
enum GroStatus gro_ordering_sequence(const struct GroOrdering *o, size_t *buf, size_t len);

/**
 * Releases an ordering handle.
 *
 * # Safety
 * `o` must be null or a handle from this library, freed once.
 */
void gro_ordering_free(struct GroOrdering *o);

/**
 * Total communication time of ordering `o` on `g`. When `per_step` is not
 * null it receives the `n - 1` per-step hop counts (`len` must be large enough).
 *
 * # Safety
 * `g` and `o` must be live handles; `total` a valid pointer; `per_step`
 * null or pointing to `len` writable values.
 */
enum GroStatus gro_comm_time(const struct GroGraph *g,
                             const struct GroOrdering *o,
                             size_t *total,
                             size_t *per_step,
                             size_t len);

/**
 * Minimum-time ordering by exhaustive search (small graphs only, else `Budget`).
 *
 * # Safety
 * `g` must be a live graph handle; `out` and `total` valid pointers.
 */
enum GroStatus gro_best_ordering_exact(const struct GroGraph *g,
                                       struct GroOrdering **out,
                                       size_t *total);

/**
 * Maximum-time ordering by exhaustive search (small graphs only, else `Budget`).
 *
 * # Safety
 * `g` must be a live graph handle; `out` and `total` valid pointers.
 */
enum GroStatus gro_worst_ordering_exact(const struct GroGraph *g,
                                        struct GroOrdering **out,
                                        size_t *total);

/**
 * Minimum-time ordering read off a shortest spanning walk.
 *
 * # Safety
 * `g` must be a live graph handle; `out` and `total` valid pointers.
 */
enum GroStatus gro_best_ordering_walk(const struct GroGraph *g,
                                      struct GroOrdering **out,
                                      size_t *total);

/**
 * Minimum communication time of a tree, `2(n - 1) - diameter`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` a valid pointer.
 */
enum GroStatus gro_tree_min_time(const struct GroGraph *g, size_t *out);

/**
 * Worst ordering of the `n`-vertex line.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_worst_line_ordering(size_t n, struct GroOrdering **out);

/**
 * Worst ordering of the `n`-vertex directed cycle.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_worst_cycle_ordering(size_t n, struct GroOrdering **out);

/**
 * Best ordering of the digraph built by [`gro_gen_dn`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GroStatus gro_dn_best_ordering(size_t n, struct GroOrdering **out);

/**
 * Runs the token traversal from `seed` on an undirected connected graph.
 * When `problem` is not null each agent also makes its greedy pick, and
 * `value` (if not null) receives the objective of the resulting joint action.
 *
 * # Safety
 * `g` must be a live graph handle; `problem` null or a live problem handle;
 * `t` and `out` valid pointers; `value` null or valid.
 */
enum GroStatus gro_run_traversal(const struct GroGraph *g,
                                 size_t seed,
                                 enum GroVariant variant,
                                 const struct GroProblem *problem,
                                 size_t *t,
                                 struct GroOrdering **out,
                                 double *value);

/**
 * Parses a coverage problem from JSON
 * (`{"ground_size": .., "weights": [..], "agents": [[[..], ..], ..]}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum GroStatus gro_problem_from_json(const char *json, struct GroProblem **out);

/**
 * Releases a problem handle.
 *
 * # Safety
 * `p` must be null or a handle from this library, freed once.
 */
void gro_problem_free(struct GroProblem *p);

/**
 * Objective value reached by the greedy run in ordering `o`.
 *
 * # Safety
 * `p` and `o` must be live handles; `out` a valid pointer.
 */
enum GroStatus gro_greedy_value(const struct GroProblem *p,
                                const struct GroOrdering *o,
                                double *out);

/**
 * Optimal objective value by enumerating every joint action.
 *
 * # Safety
 * `p` must be a live problem handle; `out` a valid pointer.
 */
enum GroStatus gro_optimum_value(const struct GroProblem *p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GREEDY_ORDER_H */
