#ifndef LMRTTG_H
#define LMRTTG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  LMRTTG_STATUS_OK = 0,
  LMRTTG_STATUS_NULL_POINTER = 1,
  LMRTTG_STATUS_DOMAIN = 2,
  LMRTTG_STATUS_SIZE_BOUND = 3,
  LMRTTG_STATUS_DOES_NOT_EXIST = 4,
  LMRTTG_STATUS_PARSE = 5,
  LMRTTG_STATUS_BUFFER_TOO_SMALL = 6,
  LMRTTG_STATUS_INTERNAL = 7,
  LMRTTG_STATUS_PANIC = 8,
} LmrttgStatus;

typedef enum {
  LMRTTG_FAMILY_C1 = 0,
  LMRTTG_FAMILY_C2 = 1,
  LMRTTG_FAMILY_C3 = 2,
  LMRTTG_FAMILY_S1 = 3,
  LMRTTG_FAMILY_S2 = 4,
  LMRTTG_FAMILY_S3 = 5,
} LmrttgFamily;

typedef enum {
  /**
   * `n < 5`.
   */
  LMRTTG_SIGN_NONE = 0,
  LMRTTG_SIGN_PLUS = 1,
  LMRTTG_SIGN_MINUS = 2,
  LMRTTG_SIGN_STAR = 3,
} LmrttgSign;

/**
 * Opaque graph handle, optionally carrying terminals.
 */
typedef struct LmrttgGraph LmrttgGraph;

typedef struct {
  uint64_t n;
  int64_t m;
  int64_t m1;
  int64_t m2;
  int64_t k3;
  int64_t p3;
  int64_t p4;
  int64_t h;
} LmrttgInvariants;

typedef struct {
  bool in_i;
  bool in_j;
  LmrttgSign sign;
  int64_t m1_s1;
  int64_t m1_c1;
  uint64_t k;
  uint64_t j;
  uint64_t kp;
  uint64_t jp;
} LmrttgClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *lmrttg_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
LmrttgStatus lmrttg_build_g(uint64_t n, uint64_t m, LmrttgGraph **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
LmrttgStatus lmrttg_build_h(uint64_t n, uint64_t m, LmrttgGraph **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
LmrttgStatus lmrttg_build_family(uint64_t n, uint64_t m, LmrttgFamily family, LmrttgGraph **out);

/**
 * Parses the JSON graph format: `{"n": 4, "terminals": [0, 1], "edges": [[0, 1], ..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
LmrttgStatus lmrttg_graph_from_json(const char *json, LmrttgGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that was not yet freed.
 */
void lmrttg_graph_free(LmrttgGraph *g);

/**
 * # Safety
 * `s` must be null or a string returned by this library that was not yet freed.
 */
void lmrttg_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle; `n` and `m` must be valid for writes.
 */
LmrttgStatus lmrttg_graph_size(const LmrttgGraph *g, size_t *n, size_t *m);

/**
 * Terminals of a two-terminal graph; `Domain` when the graph has none.
 *
 * # Safety
 * `g` must be a live handle; `s` and `t` must be valid for writes.
 */
LmrttgStatus lmrttg_graph_terminals(const LmrttgGraph *g, size_t *s, size_t *t);

/**
 * Writes edges as `u0, v0, u1, v1, ..` into `buf` (room for `cap` edges) and
 * the edge count into `written`. With too little room nothing is copied,
 * `written` holds the needed count and `BufferTooSmall` is returned.
 *
 * # Safety
 * `g` must be a live handle; `buf` must hold `2 * cap` values; `written`
 * must be valid for writes.
 */
LmrttgStatus lmrttg_graph_edges(const LmrttgGraph *g, uint32_t *buf, size_t cap, size_t *written);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes. Free the
 * result with [`lmrttg_string_free`].
 */
LmrttgStatus lmrttg_graph_to_json(const LmrttgGraph *g, char **out);

/**
 * # Safety
 * As for [`lmrttg_graph_to_json`].
 */
LmrttgStatus lmrttg_graph_to_dot(const LmrttgGraph *g, char **out);

/**
 * Canonical key as `n:hex`; terminals are respected as an unordered pair.
 *
 * # Safety
 * As for [`lmrttg_graph_to_json`].
 */
LmrttgStatus lmrttg_graph_canonical_key(const LmrttgGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
LmrttgStatus lmrttg_invariants(const LmrttgGraph *g, LmrttgInvariants *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
LmrttgStatus lmrttg_classify(uint64_t n, uint64_t m, LmrttgClass *out);

/**
 * `N_1 .. N_m` of a two-terminal graph into `buf` (room for `cap` values),
 * with the same size protocol as [`lmrttg_graph_edges`].
 *
 * # Safety
 * `g` must be a live handle; `buf` must hold `cap` values; `written` must
 * be valid for writes.
 */
LmrttgStatus lmrttg_n_vector(const LmrttgGraph *g, uint64_t *buf, size_t cap, size_t *written);

/**
 * Exact two-terminal reliability at `p` (`"a/b"`), written as `"a/b"`.
 *
 * # Safety
 * `g` must be a live handle; `p` a NUL-terminated string; `out` valid for
 * writes. Free the result with [`lmrttg_string_free`].
 */
LmrttgStatus lmrttg_reliability(const LmrttgGraph *g, const char *p, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LMRTTG_H */
