#ifndef GALOIS_WIDTH_H
#define GALOIS_WIDTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GwStatus {
  GW_STATUS_OK = 0,
  GW_STATUS_NULL_POINTER = 1,
  GW_STATUS_INVALID_UTF8 = 2,
  GW_STATUS_PARSE = 3,
  GW_STATUS_INVALID_INPUT = 4,
  GW_STATUS_BOUND_EXCEEDED = 5,
  GW_STATUS_REDUCIBLE = 6,
  GW_STATUS_NOT_SQUAREFREE = 7,
  GW_STATUS_TRACKING = 8,
  GW_STATUS_INTERNAL = 9,
  GW_STATUS_PANIC = 10,
} GwStatus;

typedef enum GwConfidence {
  GW_CONFIDENCE_PROVED = 0,
  GW_CONFIDENCE_HEURISTIC_LOWER_BOUND = 1,
  GW_CONFIDENCE_UPPER_BOUND_ONLY = 2,
} GwConfidence;

// A permutation group.
typedef struct GwGroup GwGroup;

// A width report together with its JSON rendering.
typedef struct GwReport GwReport;

// Tunable bounds; obtain defaults from [`gw_options_default`]. Zero bounds
// are rejected.
typedef struct GwOptions {
  uint64_t oracle_bound;
  uint64_t mu_bound;
  uint64_t coset_cap;
  uint64_t prime_budget;
  double match_tol;
  bool cross_check;
} GwOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *gw_last_error_message(void);

// Library version as a static string.
const char *gw_version(void);

struct GwOptions gw_options_default(void);

// Builds the group named by a group expression such as `"wr(S(2),S(3))"`.
//
// # Safety
// `expr` must be a nul-terminated string and `out` a writable pointer.
enum GwStatus gw_group_parse(const char *expr, struct GwGroup **out);

// Number of points acted on; 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
size_t gw_group_degree(const struct GwGroup *group);

// Group order in decimal, to be released with [`gw_string_free`]; null for
// a null handle.
//
// # Safety
// `group` must be null or a live handle.
char *gw_group_order(const struct GwGroup *group);

// # Safety
// `group` must be null or a handle not yet freed.
void gw_group_free(struct GwGroup *group);

// Width of a built group via its composition factors.
//
// # Safety
// `group` must be a live handle, `options` null or valid, `out` writable.
enum GwStatus gw_width_group(const struct GwGroup *group,
                             const struct GwOptions *options,
                             struct GwReport **out);

// Width by exhaustive search over maximal chains; fails with
// `BoundExceeded` above `options.oracle_bound`.
//
// # Safety
// As for [`gw_width_group`].
enum GwStatus gw_width_oracle(const struct GwGroup *group,
                              const struct GwOptions *options,
                              struct GwReport **out);

// Width of a group expression, falling back to symbolic factors for groups
// too large to build.
//
// # Safety
// `expr` must be a nul-terminated string, `options` null or valid, `out`
// writable.
enum GwStatus gw_width_expr(const char *expr,
                            const struct GwOptions *options,
                            struct GwReport **out);

// Width of the Galois group of an integer polynomial in `x`, either as an
// expression or as a JSON coefficient array in ascending order.
//
// # Safety
// As for [`gw_width_expr`].
enum GwStatus gw_width_polynomial(const char *poly,
                                  const struct GwOptions *options,
                                  struct GwReport **out);

// Monodromy width lower bound of a family in `y` and `p`.
//
// # Safety
// As for [`gw_width_expr`].
enum GwStatus gw_width_family(const char *family,
                              const struct GwOptions *options,
                              struct GwReport **out);

// # Safety
// `report` must be a live handle.
uint64_t gw_report_width(const struct GwReport *report);

// # Safety
// `report` must be a live handle.
enum GwConfidence gw_report_confidence(const struct GwReport *report);

// Number of composition factors listed in the report.
//
// # Safety
// `report` must be a live handle.
size_t gw_report_factor_count(const struct GwReport *report);

// JSON rendering, owned by the report.
//
// # Safety
// `report` must be a live handle; the string dies with it.
const char *gw_report_json(const struct GwReport *report);

// # Safety
// `report` must be null or a handle not yet freed.
void gw_report_free(struct GwReport *report);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void gw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALOIS_WIDTH_H */
