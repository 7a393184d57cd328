#ifndef WEGNER7_H
#define WEGNER7_H

#pragma once

/* Generated by cbindgen from wegner7-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum Wegner7Status {
  WEGNER7_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WEGNER7_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input text did not parse as a rotation-system graph.
   */
  WEGNER7_STATUS_PARSE_ERROR = 2,
  /**
   * The input graph violates a precondition (degree > 3) or the supplied
   * coloring is not a proper total coloring of the square.
   */
  WEGNER7_STATUS_INVALID_INPUT = 3,
  /**
   * The instance exceeded the configured size budget.
   */
  WEGNER7_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * An internal invariant failed; the result cannot be trusted.
   */
  WEGNER7_STATUS_INTERNAL = 5,
} Wegner7Status;

/**
 * Opaque handle to an embedded graph (rotation system).
 */
typedef struct Wegner7Graph Wegner7Graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses rotation-system text (the `.rot` format: vertex count line, then
 * `v: n1 n2 ...` lines) into a graph handle stored in `*out`.
 *
 * # Safety
 * `text` must point to a valid NUL-terminated string and `out` to a writable
 * `Wegner7Graph*` slot; both must stay valid for the duration of the call.
 */
enum Wegner7Status wegner7_graph_parse_rot(const char *text, struct Wegner7Graph **out);

/**
 * Releases a graph handle. Null is accepted and ignored.
 *
 * # Safety
 * `g` must be null or a pointer previously returned through
 * [`wegner7_graph_parse_rot`] and not yet freed.
 */
void wegner7_graph_free(struct Wegner7Graph *g);

/**
 * Number of vertices, or -1 if `g` is null.
 *
 * # Safety
 * `g` must be null or a live handle from [`wegner7_graph_parse_rot`].
 */
int64_t wegner7_graph_vertex_count(const struct Wegner7Graph *g);

/**
 * Number of edges, or -1 if `g` is null.
 *
 * # Safety
 * `g` must be null or a live handle from [`wegner7_graph_parse_rot`].
 */
int64_t wegner7_graph_edge_count(const struct Wegner7Graph *g);

/**
 * Colors the square of the graph with at most 7 colors and stores a JSON
 * report in `*out_json`: `{"n", "verified", "colors" (1-based per vertex),
 * "colors_used", "path"}`. The caller frees the string with
 * [`wegner7_string_free`].
 *
 * # Safety
 * `g` must be a live handle from [`wegner7_graph_parse_rot`] and `out_json`
 * a writable `char**` slot.
 */
enum Wegner7Status wegner7_color_json(const struct Wegner7Graph *g, char **out_json);

/**
 * Checks that `colors` (one 1..=7 entry per vertex) is a proper coloring of
 * the graph's square. Returns `Ok` when it is, `InvalidInput` when it is not.
 *
 * # Safety
 * `g` must be a live handle from [`wegner7_graph_parse_rot`] and `colors`
 * must point to at least `len` readable bytes.
 */
enum Wegner7Status wegner7_verify(const struct Wegner7Graph *g,
                                  const uint8_t *colors,
                                  uintptr_t len);

/**
 * Canonical text form of the graph (`.rot` format) in `*out_text`, freed by
 * the caller with [`wegner7_string_free`].
 *
 * # Safety
 * `g` must be a live handle from [`wegner7_graph_parse_rot`] and `out_text`
 * a writable `char**` slot.
 */
enum Wegner7Status wegner7_graph_to_rot(const struct Wegner7Graph *g, char **out_text);

/**
 * Releases a string returned by this library. Null is accepted and ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from one of this library's
 * string-returning functions, not yet freed.
 */
void wegner7_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WEGNER7_H */
