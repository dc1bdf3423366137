#ifndef CXTA_H
#define CXTA_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CxtaErrorCode {
  CXTA_ERROR_CODE_OK = 0,
  CXTA_ERROR_CODE_NULL_POINTER = 1,
  CXTA_ERROR_CODE_INVALID_UTF8 = 2,
  CXTA_ERROR_CODE_MALFORMED_JSON = 3,
  CXTA_ERROR_CODE_INVALID_INPUT = 4,
  CXTA_ERROR_CODE_PANIC = 5,
} CxtaErrorCode;

typedef enum CxtaStatus {
  CXTA_STATUS_ADMISSIBLE = 0,
  CXTA_STATUS_RULED_OUT = 1,
  CXTA_STATUS_INDETERMINATE = 2,
} CxtaStatus;

/**
 * A candidate triangle group.
 */
typedef struct CxtaCandidate CxtaCandidate;

/**
 * The outcome of an obstruction test.
 */
typedef struct CxtaVerdict CxtaVerdict;

/**
 * Parses a candidate from its JSON form, e.g.
 * `{"angles":["2","3","7"],"psi":"1/1","orders":[2,2,2]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CxtaErrorCode cxta_candidate_from_json(const char *json, struct CxtaCandidate **out);

/**
 * # Safety
 * `c` must come from `cxta_candidate_from_json` and not be freed twice.
 */
void cxta_candidate_free(struct CxtaCandidate *c);

/**
 * Runs the full obstruction test on a candidate.
 *
 * # Safety
 * `c` must be a live candidate handle and `out` a valid pointer.
 */
enum CxtaErrorCode cxta_admissibility_test(const struct CxtaCandidate *c, struct CxtaVerdict **out);

/**
 * Takeuchi's criterion for the Fuchsian triangle (p, q, r); 0 marks an ideal vertex.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CxtaErrorCode cxta_takeuchi(uint32_t p, uint32_t q, uint32_t r, struct CxtaVerdict **out);

/**
 * # Safety
 * `v` must come from this library and not be freed twice.
 */
void cxta_verdict_free(struct CxtaVerdict *v);

/**
 * # Safety
 * `v` must be a live verdict handle and `out` a valid pointer.
 */
enum CxtaErrorCode cxta_verdict_status(const struct CxtaVerdict *v, enum CxtaStatus *out);

/**
 * The witnessing Galois exponent, or −1 when the verdict has none.
 *
 * # Safety
 * `v` must be a live verdict handle or null (which yields −1).
 */
int64_t cxta_verdict_witness(const struct CxtaVerdict *v);

/**
 * The reason tag, e.g. `NEGATIVE_PLACE_MOVES_E`. Free with `cxta_string_free`.
 *
 * # Safety
 * `v` must be a live verdict handle or null (which yields null).
 */
char *cxta_verdict_tag(const struct CxtaVerdict *v);

/**
 * The human-readable reason. Free with `cxta_string_free`.
 *
 * # Safety
 * `v` must be a live verdict handle or null (which yields null).
 */
char *cxta_verdict_reason(const struct CxtaVerdict *v);

/**
 * The verdict as a JSON object. Free with `cxta_string_free`.
 *
 * # Safety
 * `v` must be a live verdict handle or null (which yields null).
 */
char *cxta_verdict_to_json(const struct CxtaVerdict *v);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void cxta_string_free(char *s);

/**
 * Jacobsthal's function j(n).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CxtaErrorCode cxta_jacobsthal(uint64_t n, uint64_t *out);

/**
 * The least prime not dividing n.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CxtaErrorCode cxta_smallest_coprime_prime(uint64_t n, uint64_t *out);

/**
 * Number of admissible right triangles (2, q, r) with q, r ≤ max_denom or ideal.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CxtaErrorCode cxta_classify_right_count(uint32_t max_denom, size_t *out);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *cxta_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cxta_version(void);

#endif  /* CXTA_H */
