#ifndef POSETCOV_H
#define POSETCOV_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PcMethod {
  PC_METHOD_AUTO = 0,
  PC_METHOD_MOAT = 1,
  PC_METHOD_NAIVE = 2,
} PcMethod;

// Status codes; the nonzero values match the command-line exit codes.
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  // Bad argument, including null pointers and out-of-range indices.
  PC_STATUS_USAGE = 1,
  PC_STATUS_INVALID_INPUT = 2,
  // A solver query ran out of time, or no cover fits in `max_k`.
  PC_STATUS_TIMEOUT = 3,
  PC_STATUS_INTERNAL = 4,
  // The caller's buffer is too small; the required length was written.
  PC_STATUS_BUFFER_TOO_SMALL = 5,
} PcStatus;

// A cover returned by [`pc_solve`] or [`pc_check_single`].
typedef struct PcCover PcCover;

// A parsed set of linear orders.
typedef struct PcInstance PcInstance;

typedef struct PcSolveOptions {
  enum PcMethod method;
  bool divide;
  // 0 means no limit.
  size_t max_k;
  // Per-query budget; 0 or negative means none.
  double timeout_secs;
  bool verify;
  uint64_t naive_cap;
  // Worker threads; 0 uses the default pool.
  size_t jobs;
} PcSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Defaults matching the command line: auto method, divided, verified,
// 900 s per query.
struct PcSolveOptions pc_solve_options_default(void);

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next call into this library on the same thread.
const char *pc_last_error(void);

// Parse an instance in the text format, one order per line.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PcStatus pc_instance_parse(const char *text, struct PcInstance **out);

// # Safety
// `inst` must come from [`pc_instance_parse`] and not be freed twice.
void pc_instance_free(struct PcInstance *inst);

// Number of orders, or 0 for NULL.
//
// # Safety
// `inst` must be NULL or a live instance.
size_t pc_instance_len(const struct PcInstance *inst);

// Universe size, or 0 for NULL.
//
// # Safety
// `inst` must be NULL or a live instance.
size_t pc_instance_universe_size(const struct PcInstance *inst);

// Label of element `index`, owned by the instance; NULL when out of range.
//
// # Safety
// `inst` must be NULL or a live instance.
const char *pc_instance_label(const struct PcInstance *inst, size_t index);

// Minimum cover of the instance. `opts` may be NULL for defaults.
//
// # Safety
// `inst` must be a live instance, `opts` NULL or valid, `out` valid.
enum PcStatus pc_solve(const struct PcInstance *inst,
                       const struct PcSolveOptions *opts,
                       struct PcCover **out);

// Sets `*is_single` and, when true and `out` is non-NULL, returns the
// one-poset cover.
//
// # Safety
// `inst` must be a live instance, `is_single` valid, `out` NULL or valid.
enum PcStatus pc_check_single(const struct PcInstance *inst, bool *is_single, struct PcCover **out);

// # Safety
// `cover` must come from this library and not be freed twice.
void pc_cover_free(struct PcCover *cover);

// Number of posets, or 0 for NULL.
//
// # Safety
// `cover` must be NULL or a live cover.
size_t pc_cover_k(const struct PcCover *cover);

// Hasse edges of poset `poset` as element-index pairs, flattened into
// `edges` (`2 * count` entries). `*len` receives the edge count. With a
// NULL or short buffer nothing is written and `BufferTooSmall` is returned.
//
// # Safety
// `cover` live, `len` valid, `edges` NULL or `cap` writable entries.
enum PcStatus pc_cover_hasse_edges(const struct PcCover *cover,
                                   size_t poset,
                                   size_t *edges,
                                   size_t cap,
                                   size_t *len);

// Whether `x < y` in poset `poset`.
//
// # Safety
// `cover` live and `out` valid.
enum PcStatus pc_cover_lt(const struct PcCover *cover, size_t poset, size_t x, size_t y, bool *out);

// JSON report, with linearizations when `languages` is set. Free the
// result with [`pc_string_free`].
//
// # Safety
// `cover` live and `out` valid.
enum PcStatus pc_cover_to_json(const struct PcCover *cover, bool languages, char **out);

// DIMACS formula for a cover of size `k` of the whole instance, with
// variable-name comments. `opts` may be NULL.
//
// # Safety
// `inst` live, `opts` NULL or valid, `out` valid.
enum PcStatus pc_emit_dimacs(const struct PcInstance *inst,
                             size_t k,
                             const struct PcSolveOptions *opts,
                             char **out);

// # Safety
// `s` must be NULL or a string returned by this library, freed once.
void pc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSETCOV_H */
