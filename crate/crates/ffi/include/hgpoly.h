#ifndef HGPOLY_H
#define HGPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every exported function.
 */
typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_INVALID_UTF8 = 2,
  HG_STATUS_PARSE = 3,
  HG_STATUS_DOMAIN = 4,
  HG_STATUS_DIMENSION_MISMATCH = 5,
  HG_STATUS_POLE = 6,
  HG_STATUS_NEEDS_DEEPER_POINT = 7,
  HG_STATUS_NUMERICAL = 8,
  HG_STATUS_PANIC = 9,
} HgStatus;

/**
 * Verdict written by [`hg_optimality_report_json`].
 */
typedef enum HgVerdict {
  HG_VERDICT_OPTIMAL = 0,
  HG_VERDICT_NOT_OPTIMAL = 1,
  HG_VERDICT_INCONCLUSIVE = 2,
} HgVerdict;

/**
 * Opaque exact Laurent polynomial.
 */
typedef struct HgPolynomial HgPolynomial;

/**
 * Opaque integer polytope.
 */
typedef struct HgPolytope HgPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hg_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void hg_string_free(char *s);

/**
 * Parses polynomial JSON `{"n", "terms": [{"exp", "num", "den"}]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_polynomial_from_json(const char *json, struct HgPolynomial **out);

/**
 * Parses an expression such as `"3x + 12xy - 2/3 y^2"` in at least
 * `min_dim` variables.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_polynomial_from_expr(const char *expr, size_t min_dim, struct HgPolynomial **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum HgStatus hg_polynomial_to_json(const struct HgPolynomial *p, char **out);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t hg_polynomial_dim(const struct HgPolynomial *p);

/**
 * Number of terms, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t hg_polynomial_len(const struct HgPolynomial *p);

/**
 * # Safety
 * `p` must be null or a handle that is not used afterwards.
 */
void hg_polynomial_free(struct HgPolynomial *p);

/**
 * Value at the complex point with coordinates `re[k] + i im[k]`.
 *
 * # Safety
 * `re` and `im` must hold `n` doubles; outputs must be writable.
 */
enum HgStatus hg_polynomial_evaluate(const struct HgPolynomial *p,
                                     const double *re,
                                     const double *im,
                                     size_t n,
                                     double *out_re,
                                     double *out_im);

/**
 * Parses polytope JSON `{"n", "vertices"}`; facets are recomputed.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_polytope_from_json(const char *json, struct HgPolytope **out);

/**
 * Number of lattice points, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t hg_polytope_lattice_point_count(const struct HgPolytope *p);

/**
 * # Safety
 * `p` must be null or a handle that is not used afterwards.
 */
void hg_polytope_free(struct HgPolytope *p);

/**
 * Canonical hypergeometric polynomial supported in the polytope.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum HgStatus hg_hypergeometric_polynomial(const struct HgPolytope *p, struct HgPolynomial **out);

/**
 * Horn system of Ore-Sato JSON data, as JSON.
 *
 * # Safety
 * `oresato_json` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_horn_system_json(const char *oresato_json, char **out);

/**
 * Exact check that `p` solves the Horn system of the Ore-Sato data.
 *
 * # Safety
 * `p` must be a live handle, `oresato_json` a NUL-terminated string and
 * `out` writable.
 */
enum HgStatus hg_is_horn_solution(const struct HgPolynomial *p,
                                  const char *oresato_json,
                                  bool *out);

/**
 * Optimality report JSON for a bivariate polynomial over its default
 * window at the given resolution and angular sampling.
 *
 * # Safety
 * `p` must be a live handle; outputs must be writable. `verdict` may be
 * null.
 */
enum HgStatus hg_optimality_report_json(const struct HgPolynomial *p,
                                        size_t resolution,
                                        size_t angles,
                                        enum HgVerdict *verdict,
                                        char **out);

/**
 * Order of the complement component containing the log-space point
 * `xi`; writes `n` integers to `out`.
 *
 * # Safety
 * `xi` must hold `n` doubles and `out` room for `n` integers.
 */
enum HgStatus hg_component_order(const struct HgPolynomial *p,
                                 const double *xi,
                                 size_t n,
                                 int64_t *out);

/**
 * Dominant exponent at `xi` if the polynomial is lopsided there;
 * `found` is set to false otherwise and `out` is left untouched.
 *
 * # Safety
 * `xi` must hold `n` doubles, `out` room for `n` integers, `found` be
 * writable.
 */
enum HgStatus hg_lopsided_at(const struct HgPolynomial *p,
                             const double *xi,
                             size_t n,
                             int64_t *out,
                             bool *found);

/**
 * `sum_j sqrt(a_j b_j) < c / 2` for `c + sum_j (a_j x_j + b_j / x_j)`.
 *
 * # Safety
 * `a` and `b` must hold `n` doubles; `out` must be writable.
 */
enum HgStatus hg_cross_polytope_optimal(const double *a,
                                        const double *b,
                                        size_t n,
                                        double c,
                                        bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HGPOLY_H */
