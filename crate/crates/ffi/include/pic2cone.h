#ifndef PIC2CONE_H
#define PIC2CONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum P2cStatus {
  P2C_STATUS_OK = 0,
  P2C_STATUS_NULL_ARGUMENT = 1,
  P2C_STATUS_INVALID_UTF8 = 2,
  P2C_STATUS_PARSE = 3,
  P2C_STATUS_INVALID_SCENARIO = 4,
  P2C_STATUS_CLASSIFY = 5,
  P2C_STATUS_DOMAIN = 6,
  /**
   * A matrix entry does not fit in `int64_t`.
   */
  P2C_STATUS_OVERFLOW = 7,
  P2C_STATUS_IO = 8,
  /**
   * The requested field is absent, e.g. alpha of a finite group.
   */
  P2C_STATUS_NOT_PRESENT = 9,
  P2C_STATUS_PANIC = 10,
} P2cStatus;

typedef enum P2cAction {
  P2C_ACTION_AUT = 0,
  P2C_ACTION_BIR = 1,
} P2cAction;

typedef enum P2cGroupKind {
  P2C_GROUP_KIND_TRIVIAL = 0,
  P2C_GROUP_KIND_ORDER_TWO = 1,
  P2C_GROUP_KIND_INFINITE_CYCLIC = 2,
  P2C_GROUP_KIND_INFINITE_DIHEDRAL = 3,
} P2cGroupKind;

/**
 * Opaque classification result for one action.
 */
typedef struct P2cProfile P2cProfile;

/**
 * Opaque parsed scenario.
 */
typedef struct P2cScenario P2cScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * failing call; never null.
 */
const char *p2c_last_error(void);

/**
 * Parse scenario text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum P2cStatus p2c_scenario_parse(const char *text, struct P2cScenario **out);

/**
 * Read and parse a scenario file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum P2cStatus p2c_scenario_load(const char *path, struct P2cScenario **out);

/**
 * # Safety
 * `s` must be null or a handle from `p2c_scenario_parse`/`p2c_scenario_load`
 * that has not been freed.
 */
void p2c_scenario_free(struct P2cScenario *s);

/**
 * Classify the group acting on the nef (`Aut`) or movable (`Bir`) cone.
 *
 * # Safety
 * `s` must be a live scenario handle and `out` a valid pointer.
 */
enum P2cStatus p2c_classify(const struct P2cScenario *s,
                            enum P2cAction act,
                            struct P2cProfile **out);

/**
 * # Safety
 * `p` must be null or a live handle from `p2c_classify`.
 */
void p2c_profile_free(struct P2cProfile *p);

/**
 * # Safety
 * `p` must be a live profile handle.
 */
enum P2cGroupKind p2c_profile_kind(const struct P2cProfile *p);

/**
 * Expansion factor of the plus generator in the canonical text encoding.
 *
 * # Safety
 * `p` must be a live profile handle and `out` a valid pointer.
 */
enum P2cStatus p2c_profile_alpha(const struct P2cProfile *p, char **out);

/**
 * Row-major entries of the plus generator into `out[0..4]`.
 *
 * # Safety
 * `p` must be a live profile handle; `out` must have room for 4 values.
 */
enum P2cStatus p2c_profile_plus_generator(const struct P2cProfile *p, int64_t *out);

/**
 * Row-major entries of the `det = -1` representative into `out[0..4]`.
 *
 * # Safety
 * As for `p2c_profile_plus_generator`.
 */
enum P2cStatus p2c_profile_minus_rep(const struct P2cProfile *p, int64_t *out);

/**
 * Run the structural validator. `*report` receives the findings text and
 * `*has_errors` whether any finding is an error.
 *
 * # Safety
 * All pointers must be valid; `s` a live scenario handle.
 */
enum P2cStatus p2c_validate(const struct P2cScenario *s, char **report, bool *has_errors);

/**
 * Build the fundamental domain from the default seed and verify its
 * translates up to `depth`.
 *
 * # Safety
 * All pointers must be valid; `s` a live scenario handle.
 */
enum P2cStatus p2c_tile_report(const struct P2cScenario *s,
                               enum P2cAction act,
                               uint32_t depth,
                               char **report,
                               bool *passed);

/**
 * Locate the tile containing `point` (e.g. `"(1, 1)"`): the word
 * `f^k` or `f^k tau` is returned through `k` and `flip`.
 *
 * # Safety
 * All pointers must be valid; `s` a live scenario handle.
 */
enum P2cStatus p2c_locate(const struct P2cScenario *s,
                          enum P2cAction act,
                          const char *point,
                          int64_t *k,
                          bool *flip);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void p2c_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIC2CONE_H */
