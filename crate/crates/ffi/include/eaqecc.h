#ifndef EAQECC_H
#define EAQECC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define EAQECC_MATCH_MATCHING 1

#define EAQECC_MATCH_FAITHFUL 2

#define EAQECC_MATCH_PROPERLY 4

typedef enum EaqeccStatus {
  EAQECC_STATUS_OK = 0,
  EAQECC_STATUS_NULL_POINTER = 1,
  EAQECC_STATUS_INVALID_UTF8 = 2,
  EAQECC_STATUS_PARSE = 3,
  EAQECC_STATUS_INVALID_ARGUMENT = 4,
  EAQECC_STATUS_BUDGET_EXCEEDED = 5,
  EAQECC_STATUS_FAILED = 6,
  EAQECC_STATUS_PANIC = 7,
} EaqeccStatus;

/**
 * Opaque handle to an additive code over GF(q²).
 */
typedef struct EaqeccCode EaqeccCode;

/**
 * EA parameters of a code. `d` is 0 when it was not computed or is undefined.
 */
typedef struct EaqeccParams {
  size_t q;
  size_t n;
  size_t k;
  size_t d;
  size_t c;
  size_t l;
  size_t m;
} EaqeccParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *eaqecc_last_error(void);

/**
 * Parse a code from the matrix text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EaqeccStatus eaqecc_code_from_text(const char *text, struct EaqeccCode **out);

/**
 * # Safety
 * `code` must be null or a handle from [`eaqecc_code_from_text`] not yet freed.
 */
void eaqecc_code_free(struct EaqeccCode *code);

/**
 * Serialize a code back to the matrix text format.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum EaqeccStatus eaqecc_code_to_text(const struct EaqeccCode *code, char **out);

/**
 * EA parameters of a code. With `with_distance` false the distance search is
 * skipped. A `budget` of 0 selects the library default.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum EaqeccStatus eaqecc_code_analyze(const struct EaqeccCode *code,
                                      bool with_distance,
                                      uint64_t budget,
                                      struct EaqeccParams *out);

/**
 * Minimum symplectic weight of the nonzero words of a code.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum EaqeccStatus eaqecc_code_min_weight(const struct EaqeccCode *code,
                                         uint64_t budget,
                                         size_t *out);

/**
 * Binomial approximation of the fidelity of a length-n, distance-d code
 * under depolarizing probability `p`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EaqeccStatus eaqecc_approx_fidelity(size_t n, size_t d, double p, double *out);

/**
 * Match flags (`EAQECC_MATCH_*`) of a sender `[[n,k,d;c]]_q` and receiver
 * `[[nb,kb,db]]_q`. A distance of 0 means unknown.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EaqeccStatus eaqecc_classify_match(size_t q,
                                        size_t n,
                                        size_t k,
                                        size_t d,
                                        size_t c,
                                        size_t nb,
                                        size_t kb,
                                        size_t db,
                                        uint32_t *out);

/**
 * CSV of the built-in combination tables.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EaqeccStatus eaqecc_tables_csv(char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void eaqecc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EAQECC_H */
