#ifndef CVXFUN_H
#define CVXFUN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; `CVXFUN_STATUS_OK` is zero.
 */
typedef enum CvxfunStatus {
  CVXFUN_STATUS_OK = 0,
  CVXFUN_STATUS_DIMENSION = 1,
  CVXFUN_STATUS_INPUT = 2,
  CVXFUN_STATUS_NOT_POINTED = 3,
  CVXFUN_STATUS_NOT_FULL_DIMENSIONAL = 4,
  CVXFUN_STATUS_SIZE_CAP = 5,
  CVXFUN_STATUS_ZERO_FUNCTOR = 6,
  CVXFUN_STATUS_NUMERICAL = 7,
  CVXFUN_STATUS_VALIDATION = 8,
  CVXFUN_STATUS_PARSE = 9,
  CVXFUN_STATUS_NULL_POINTER = 10,
  CVXFUN_STATUS_INVALID_UTF8 = 11,
  CVXFUN_STATUS_PANIC = 12,
} CvxfunStatus;

/**
 * Opaque convex polytope containing the origin in its interior.
 */
typedef struct CvxfunBody CvxfunBody;

/**
 * Opaque polyhedral cone.
 */
typedef struct CvxfunCone CvxfunCone;

/**
 * Opaque moment pencil.
 */
typedef struct CvxfunPencil CvxfunPencil;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *cvxfun_last_error(void);

/**
 * Library version as a static string.
 */
const char *cvxfun_version(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must come from a `char **` out-parameter of this library, or be null.
 */
void cvxfun_string_free(char *s);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_cone_from_json(const char *json, struct CvxfunCone **out);

/**
 * # Safety
 * `c` must be a live cone handle; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_cone_to_json(const struct CvxfunCone *c, char **out);

/**
 * # Safety
 * `c` must be a cone handle from this library, or null.
 */
void cvxfun_cone_free(struct CvxfunCone *c);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `c` must be a live cone handle or null.
 */
size_t cvxfun_cone_dim(const struct CvxfunCone *c);

/**
 * Number of extreme rays, or 0 for a null handle.
 *
 * # Safety
 * `c` must be a live cone handle or null.
 */
size_t cvxfun_cone_num_rays(const struct CvxfunCone *c);

/**
 * # Safety
 * `a`, `b` must be live cone handles; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_cone_tensor(const struct CvxfunCone *a,
                                     const struct CvxfunCone *b,
                                     struct CvxfunCone **out);

/**
 * # Safety
 * `a`, `b` must be live cone handles; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_cone_hom(const struct CvxfunCone *a,
                                  const struct CvxfunCone *b,
                                  struct CvxfunCone **out);

/**
 * # Safety
 * `c` must be a live cone handle; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_cone_dual(const struct CvxfunCone *c, struct CvxfunCone **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_from_json(const char *json, struct CvxfunBody **out);

/**
 * # Safety
 * `p` must be a live body handle; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_to_json(const struct CvxfunBody *p, char **out);

/**
 * # Safety
 * `p` must be a body handle from this library, or null.
 */
void cvxfun_body_free(struct CvxfunBody *p);

/**
 * # Safety
 * `p` must be a live body handle or null.
 */
size_t cvxfun_body_dim(const struct CvxfunBody *p);

/**
 * # Safety
 * `p` must be a live body handle or null.
 */
size_t cvxfun_body_num_vertices(const struct CvxfunBody *p);

/**
 * # Safety
 * `a`, `b` must be live body handles; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_tensor(const struct CvxfunBody *a,
                                     const struct CvxfunBody *b,
                                     struct CvxfunBody **out);

/**
 * # Safety
 * `p` must be a live body handle; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_sym(const struct CvxfunBody *p, size_t n, struct CvxfunBody **out);

/**
 * Schur functor for the partition `shape[0] ≥ shape[1] ≥ …`.
 *
 * # Safety
 * `p` must be a live body handle, `shape` point to `len` entries, `out` be valid.
 */
enum CvxfunStatus cvxfun_body_schur(const struct CvxfunBody *p,
                                    const size_t *shape,
                                    size_t len,
                                    struct CvxfunBody **out);

/**
 * # Safety
 * `p` must be a live body handle; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_polar(const struct CvxfunBody *p, struct CvxfunBody **out);

/**
 * # Safety
 * `a`, `b` must be live body handles; `out` a valid pointer.
 */
enum CvxfunStatus cvxfun_body_product(const struct CvxfunBody *a,
                                      const struct CvxfunBody *b,
                                      struct CvxfunBody **out);

/**
 * Linearize an objective document over one body (symmetric) or two
 * (bilinear) and report the LP optimum and the brute-force maximum as JSON.
 *
 * # Safety
 * `objective_json` must be nul-terminated; `bodies` must point to `count`
 * live body handles; `out` must be valid.
 */
enum CvxfunStatus cvxfun_linearize(const char *objective_json,
                                   const struct CvxfunBody *const *bodies,
                                   size_t count,
                                   char **out);

/**
 * Assemble the degree-`k` moment pencil of a measure (JSON) pushed through
 * a polynomial map (JSON, or null for the identity).
 *
 * # Safety
 * `measure_json` must be nul-terminated, `map_json` nul-terminated or null,
 * `out` valid.
 */
enum CvxfunStatus cvxfun_pencil_assemble(const char *measure_json,
                                         const char *map_json,
                                         uint32_t k,
                                         struct CvxfunPencil **out);

/**
 * # Safety
 * `json` must be a nul-terminated pencil document; `out` valid.
 */
enum CvxfunStatus cvxfun_pencil_from_json(const char *json, struct CvxfunPencil **out);

/**
 * # Safety
 * `p` must be a live pencil handle; `out` valid.
 */
enum CvxfunStatus cvxfun_pencil_to_json(const struct CvxfunPencil *p, char **out);

/**
 * # Safety
 * `p` must be a pencil handle from this library, or null.
 */
void cvxfun_pencil_free(struct CvxfunPencil *p);

/**
 * Exact membership of λ (JSON array of rationals) in the pencil's spectrahedron.
 *
 * # Safety
 * `p` must be a live pencil handle, `lambda_json` nul-terminated, `out` valid.
 */
enum CvxfunStatus cvxfun_pencil_member(const struct CvxfunPencil *p,
                                       const char *lambda_json,
                                       bool *out);

/**
 * Certified bracket `lower ≤ max ⟨c, λ⟩ ≤ upper` over the spectrahedron
 * intersected with the box `[−box_bound, box_bound]`.
 *
 * # Safety
 * `p` must be a live pencil handle, `c_json` and `box_bound` nul-terminated,
 * `upper` and `lower` valid.
 */
enum CvxfunStatus cvxfun_pencil_maximize(const struct CvxfunPencil *p,
                                         const char *c_json,
                                         const char *box_bound,
                                         double tol,
                                         double *upper,
                                         double *lower);

/**
 * Run the worked-example suite; writes the JSON report and whether every
 * item passed.
 *
 * # Safety
 * `report` and `passed` must be valid pointers.
 */
enum CvxfunStatus cvxfun_verify_examples(char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CVXFUN_H */
