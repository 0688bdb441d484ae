#ifndef ORR_H
#define ORR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum OrrStatus {
  /**
   * Success.
   */
  ORR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ORR_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ORR_STATUS_INVALID_UTF8 = 2,
  /**
   * The input could not be parsed.
   */
  ORR_STATUS_PARSE_ERROR = 3,
  /**
   * The table or permutations do not describe a group.
   */
  ORR_STATUS_NOT_A_GROUP = 4,
  /**
   * The candidate set is invalid (identity, duplicate, or out of
   * range).
   */
  ORR_STATUS_BAD_SET = 5,
  /**
   * A search budget ran out before an answer was reached.
   */
  ORR_STATUS_BUDGET_EXHAUSTED = 6,
  /**
   * An internal invariant failed; this is a bug, not bad input.
   */
  ORR_STATUS_INTERNAL_ERROR = 7,
} OrrStatus;

/**
 * Opaque handle to a loaded group.
 */
typedef struct OrrGroup OrrGroup;

/**
 * Result of verifying one candidate connection set.
 */
typedef struct OrrVerifyResult {
  /**
   * S ∩ S⁻¹ = ∅.
   */
  bool oriented;
  /**
   * S generates the group.
   */
  bool generates;
  /**
   * The Cayley digraph is an ORR of the group.
   */
  bool is_orr;
  /**
   * Order of the stabilizer of the identity vertex, saturated to
   * the maximum when it exceeds 64 bits.
   */
  uint64_t stabilizer_order;
} OrrVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a group from its JSON description (kind "table" or "perm")
 * and writes a new handle to `out`.
 *
 * # Safety
 *
 * `json` must point to a NUL-terminated string and `out` to writable
 * space for one pointer. On success the handle must be released with
 * `orr_group_free`.
 */
enum OrrStatus orr_group_from_json(const char *json, struct OrrGroup **out);

/**
 * Builds a group from a row-major multiplication table over element
 * indices 0..order (index 0 is the identity) and writes a new handle
 * to `out`. `name` may be null.
 *
 * # Safety
 *
 * `entries` must point to `order * order` values, `name` (when not
 * null) to a NUL-terminated string, and `out` to writable space for
 * one pointer. On success the handle must be released with
 * `orr_group_free`.
 */
enum OrrStatus orr_group_from_table(uint32_t order,
                                    const uint16_t *entries,
                                    const char *name,
                                    struct OrrGroup **out);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 *
 * `group` must be null or a live handle from a constructor.
 */
uint32_t orr_group_order(const struct OrrGroup *group);

/**
 * Releases a group handle. Null is ignored.
 *
 * # Safety
 *
 * `group` must be null or a handle from a constructor, released at
 * most once.
 */
void orr_group_free(struct OrrGroup *group);

/**
 * Analyzes the group and writes the verdict as a JSON string to
 * `out_json`. `seed` drives sampled searches, `candidate_budget`
 * bounds brute-force fallbacks (pass 0 for the default), and
 * `full_aut` forces the full stabilizer search.
 *
 * # Safety
 *
 * `group` must be a live handle and `out_json` writable space for one
 * pointer. On success the string must be released with
 * `orr_string_free`.
 */
enum OrrStatus orr_analyze(const struct OrrGroup *group,
                           uint64_t seed,
                           uint64_t candidate_budget,
                           bool full_aut,
                           char **out_json);

/**
 * Verifies one candidate connection set given as element indices and
 * fills `out`.
 *
 * # Safety
 *
 * `group` must be a live handle, `set` must point to `set_len`
 * indices, and `out` must be writable.
 */
enum OrrStatus orr_verify(const struct OrrGroup *group,
                          const uint16_t *set,
                          uintptr_t set_len,
                          bool full_aut,
                          struct OrrVerifyResult *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 *
 * `s` must be null or a string from this library, released at most
 * once.
 */
void orr_string_free(char *s);

/**
 * Static name for a status code, for error messages.
 */
const char *orr_status_name(enum OrrStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORR_H */
