/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SWAPMATCH_H
#define SWAPMATCH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Engine selector, passed as a plain `uint32_t`.
enum SmEngine
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  SM_ENGINE_ORACLE_DP = 0,
  SM_ENGINE_NFA = 1,
  SM_ENGINE_PLAIN_SWAP = 2,
  SM_ENGINE_ENCODED_SWAP = 3,
  SM_ENGINE_SHIFT_AND = 4,
  SM_ENGINE_ENCODED_PREFIX = 5,
};
#ifndef __cplusplus
typedef uint32_t SmEngine;
#endif // __cplusplus

// Result code of every fallible call.
typedef enum SmStatus {
  SM_STATUS_OK = 0,
  SM_STATUS_NULL_POINTER = 1,
  SM_STATUS_EMPTY_PATTERN = 2,
  SM_STATUS_INVALID_ENGINE = 3,
  // The output buffer was too small; the total is still reported.
  SM_STATUS_BUFFER_TOO_SMALL = 4,
  SM_STATUS_PANIC = 5,
} SmStatus;

// A compiled pattern. Immutable; may be shared between threads.
typedef struct SmMatcher SmMatcher;

// Incremental search state over a stream of chunks.
typedef struct SmScanner SmScanner;

// Callback receiving the 0-based end position of each match.
typedef void (*SmMatchCallback)(uint64_t position, void *user);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Compiles `pattern[0..len]` for the engine `engine` (an `SmEngine` value).
//
// # Safety
// `pattern` must be valid for `len` bytes and `out` must be writable.
enum SmStatus sm_matcher_new(const uint8_t *pattern,
                             size_t len,
                             uint32_t engine,
                             struct SmMatcher **out);

// Releases a matcher. Null is ignored. Scanners created from it stay valid.
//
// # Safety
// `m` must come from [`sm_matcher_new`] and not be freed twice.
void sm_matcher_free(struct SmMatcher *m);

// # Safety
// `m` must be a live matcher and `out` writable.
enum SmStatus sm_matcher_pattern_len(const struct SmMatcher *m, size_t *out);

// Finds every match in `text`. Up to `capacity` end positions are written
// to `positions`, in increasing order; `*found` receives the total. Returns
// `SM_STATUS_BUFFER_TOO_SMALL` when the total exceeds `capacity`.
//
// # Safety
// `text` must be valid for `len` bytes, `positions` for `capacity` writes,
// and `found` writable.
enum SmStatus sm_matcher_search(const struct SmMatcher *m,
                                const uint8_t *text,
                                size_t len,
                                uint64_t *positions,
                                size_t capacity,
                                size_t *found);

// Counts matches in `text`.
//
// # Safety
// `text` must be valid for `len` bytes and `count` writable.
enum SmStatus sm_matcher_count(const struct SmMatcher *m,
                               const uint8_t *text,
                               size_t len,
                               uint64_t *count);

// Starts a stream over `m`. The scanner keeps its own reference to the
// compiled pattern.
//
// # Safety
// `m` must be a live matcher and `out` writable.
enum SmStatus sm_scanner_new(const struct SmMatcher *m, struct SmScanner **out);

// Feeds the next chunk. `callback` gets absolute end positions, counted
// from the first byte ever fed; it may be null to only advance the state.
//
// # Safety
// `s` must be a live scanner and `chunk` valid for `len` bytes. The callback
// must not unwind.
enum SmStatus sm_scanner_feed(struct SmScanner *s,
                              const uint8_t *chunk,
                              size_t len,
                              SmMatchCallback callback,
                              void *user);

// Bytes fed since creation or the last reset.
//
// # Safety
// `s` must be a live scanner and `out` writable.
enum SmStatus sm_scanner_consumed(const struct SmScanner *s, uint64_t *out);

// # Safety
// `s` must be a live scanner.
enum SmStatus sm_scanner_reset(struct SmScanner *s);

// Releases a scanner. Null is ignored.
//
// # Safety
// `s` must come from [`sm_scanner_new`] and not be freed twice.
void sm_scanner_free(struct SmScanner *s);

// Factor counts of a pattern: `k` for the shared factorization of `P`,
// `P_e`, `P_o` and `k_prime` for the greedy factorization of `P` alone.
//
// # Safety
// `pattern` must be valid for `len` bytes; `k` and `k_prime` writable.
enum SmStatus sm_factor_counts(const uint8_t *pattern, size_t len, size_t *k, size_t *k_prime);

// Static, NUL-terminated description of a status code.
const char *sm_status_message(int32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWAPMATCH_H */
