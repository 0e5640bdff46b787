#ifndef PIPEHOPF_H
#define PIPEHOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PdStatus {
  PD_STATUS_OK = 0,
  PD_STATUS_NULL_POINTER = 1,
  PD_STATUS_INVALID_UTF8 = 2,
  PD_STATUS_PARSE = 3,
  PD_STATUS_INVALID = 4,
  PD_STATUS_RESOURCE_BOUND = 5,
  PD_STATUS_OUT_OF_RANGE = 6,
  PD_STATUS_OVERFLOW = 7,
  PD_STATUS_PANIC = 8,
} PdStatus;

// A permutation in one-line notation.
typedef struct PdPermutation PdPermutation;

// A reduced pipe dream.
typedef struct PdPipeDream PdPipeDream;

// An ordered list of pipe dreams.
typedef struct PdPipeDreamList PdPipeDreamList;

// A linear combination of pipe dreams with integer coefficients, sorted by basis element.
typedef struct PdPipeDreamSum PdPipeDreamSum;

// Tamari, Hopf and labeled Hopf chain counts for one size and length.
typedef struct PdChainCounts {
  uint64_t r;
  uint64_t tamari;
  uint64_t hopf;
  uint64_t labeled;
} PdChainCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *pd_last_error(void);

// # Safety
// `text` must come from this library, or be null.
void pd_string_free(char *text);

// Parses a permutation such as "2431" or the comma form "2,4,3,1".
//
// # Safety
// `word` must be a nul-terminated string and `out` a valid pointer.
enum PdStatus pd_permutation_parse(const char *word, struct PdPermutation **out);

// # Safety
// `permutation` must come from this library, or be null.
void pd_permutation_free(struct PdPermutation *permutation);

// # Safety
// `permutation` must be a live handle and `out` a valid pointer.
enum PdStatus pd_permutation_size(const struct PdPermutation *permutation, size_t *out);

// # Safety
// `permutation` must be a live handle and `out` a valid pointer.
enum PdStatus pd_permutation_to_string(const struct PdPermutation *permutation, char **out);

// All reduced pipe dreams with the given exit permutation, in reading-word order.
//
// # Safety
// `permutation` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dreams_enumerate(const struct PdPermutation *permutation,
                                       struct PdPipeDreamList **out);

// # Safety
// `list` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dream_list_len(const struct PdPipeDreamList *list, size_t *out);

// Copies entry `index` into a new handle.
//
// # Safety
// `list` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dream_list_get(const struct PdPipeDreamList *list,
                                     size_t index,
                                     struct PdPipeDream **out);

// # Safety
// `list` must come from this library, or be null.
void pd_pipe_dream_list_free(struct PdPipeDreamList *list);

// Parses rows of '+' (cross) and '.' (elbow) separated by '/' or newlines.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum PdStatus pd_pipe_dream_parse(const char *text, struct PdPipeDream **out);

// # Safety
// `dream` must come from this library, or be null.
void pd_pipe_dream_free(struct PdPipeDream *dream);

// Rows of '+' and '.', top row first, separated by newlines.
//
// # Safety
// `dream` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dream_to_string(const struct PdPipeDream *dream, char **out);

// # Safety
// `dream` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dream_exit_permutation(const struct PdPipeDream *dream,
                                             struct PdPermutation **out);

// # Safety
// `left` and `right` must be live handles and `out` a valid pointer.
enum PdStatus pd_pipe_dream_product(const struct PdPipeDream *left,
                                    const struct PdPipeDream *right,
                                    struct PdPipeDreamSum **out);

// # Safety
// `sum` must be a live handle and `out` a valid pointer.
enum PdStatus pd_pipe_dream_sum_len(const struct PdPipeDreamSum *sum, size_t *out);

// Copies term `index` into a new handle and its coefficient.
//
// # Safety
// `sum` must be a live handle; `dream` and `coefficient` valid pointers.
enum PdStatus pd_pipe_dream_sum_get(const struct PdPipeDreamSum *sum,
                                    size_t index,
                                    struct PdPipeDream **dream,
                                    int64_t *coefficient);

// # Safety
// `sum` must come from this library, or be null.
void pd_pipe_dream_sum_free(struct PdPipeDreamSum *sum);

// Applies the zeta map, or its inverse when `inverse` is nonzero, to an N/E word.
//
// # Safety
// `word` must be a nul-terminated string and `out` a valid pointer.
enum PdStatus pd_zeta(const char *word, int32_t inverse, char **out);

// Number of quarter-plane walks of length 2n.
//
// # Safety
// `out` must be a valid pointer.
enum PdStatus pd_walk_count(size_t n, uint64_t *out);

// Chain counts of size `n` (at most 5) and length `r`.
//
// # Safety
// `out` must be a valid pointer.
enum PdStatus pd_chain_counts(size_t n, size_t r, struct PdChainCounts *out);

// Library version as a static string.
const char *pd_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PIPEHOPF_H */
