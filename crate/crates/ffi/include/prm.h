#ifndef PRM_H
#define PRM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PrmStatus {
  PRM_STATUS_OK = 0,
  PRM_STATUS_NULL_POINTER = 1,
  PRM_STATUS_INVALID_ARGUMENT = 2,
  PRM_STATUS_OUT_OF_RANGE = 3,
  PRM_STATUS_OVERFLOW = 4,
  PRM_STATUS_DIVISION_BY_ZERO = 5,
  PRM_STATUS_VERIFICATION_FAILED = 6,
  PRM_STATUS_BUDGET_EXCEEDED = 7,
  PRM_STATUS_INTERNAL = 8,
} PrmStatus;

typedef enum PrmObjective {
  PRM_OBJECTIVE_ER = 0,
  PRM_OBJECTIVE_UR_RATIONAL = 1,
} PrmObjective;

/*
 Result of a lower-bound construction.
 */
typedef struct PrmConstruction PrmConstruction;

/*
 A finite field `GF(p^e)`.
 */
typedef struct PrmField PrmField;

/*
 Result of a subspace search.
 */
typedef struct PrmSearch PrmSearch;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *prm_last_error_message(void);

/*
 Library version as a static string.
 */
const char *prm_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void prm_string_free(char *s);

/*
 Creates `GF(p^e)` with the default modulus.

 # Safety
 `out` must be a valid pointer.
 */
enum PrmStatus prm_field_new(uint32_t p, uint32_t e, struct PrmField **out);

/*
 # Safety
 `field` must be null or a handle from [`prm_field_new`], not yet freed.
 */
void prm_field_free(struct PrmField *field);

/*
 Field order `q`, or 0 for a null handle.

 # Safety
 `field` must be null or a live handle.
 */
uint32_t prm_field_order(const struct PrmField *field);

/*
 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_field_add(const struct PrmField *field, uint32_t a, uint32_t b, uint32_t *out);

/*
 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_field_sub(const struct PrmField *field, uint32_t a, uint32_t b, uint32_t *out);

/*
 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_field_mul(const struct PrmField *field, uint32_t a, uint32_t b, uint32_t *out);

/*
 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_field_div(const struct PrmField *field, uint32_t a, uint32_t b, uint32_t *out);

/*
 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_field_inv(const struct PrmField *field, uint32_t a, uint32_t *out);

/*
 `|Ω(d, m)| = C(m+d, d)`.

 # Safety
 `out` must be a valid pointer.
 */
enum PrmStatus prm_omega_size(uint32_t d, uint32_t m, uint64_t *out);

/*
 `H_r(d, m; q)`.

 # Safety
 `out` must be a valid pointer.
 */
enum PrmStatus prm_h(uint32_t d, uint32_t m, uint64_t q, uint64_t r, uint64_t *out);

/*
 `H'_{r'}(d, m)`.

 # Safety
 `out` must be a valid pointer.
 */
enum PrmStatus prm_h_prime(uint32_t d, uint32_t m, uint64_t r_prime, uint64_t *out);

/*
 `f_r(d, m; q)` for `q >= d + 1`; both evaluation routes must agree.

 # Safety
 `out` must be a valid pointer.
 */
enum PrmStatus prm_f(uint32_t d, uint32_t m, uint64_t q, uint64_t r, uint64_t *out);

/*
 Builds and verifies the lower-bound subspace with the default roots.

 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_construct(const struct PrmField *field,
                             uint32_t d,
                             uint32_t m,
                             uint64_t r,
                             struct PrmConstruction **out);

/*
 # Safety
 `c` must be null or a live construction handle.
 */
void prm_construction_free(struct PrmConstruction *c);

/*
 Measured `|V(W)(F_q)|`, or 0 for a null handle.

 # Safety
 `c` must be null or a live construction handle.
 */
uint64_t prm_construction_verified_count(const struct PrmConstruction *c);

/*
 Measured `dim W`, or 0 for a null handle.

 # Safety
 `c` must be null or a live construction handle.
 */
uint64_t prm_construction_verified_dim(const struct PrmConstruction *c);

/*
 Full report as JSON; free with [`prm_string_free`]. Null on a null handle.

 # Safety
 `c` must be null or a live construction handle.
 */
char *prm_construction_to_json(const struct PrmConstruction *c);

/*
 Exhaustive search over all `r`-dimensional subspaces of `S_d(m, F_q)`.
 `workers = 0` means one; `budget = 0` means the library default.

 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_search_exhaustive(const struct PrmField *field,
                                     uint32_t obj,
                                     uint32_t d,
                                     uint32_t m,
                                     uint32_t r,
                                     uint32_t workers,
                                     uint64_t budget,
                                     struct PrmSearch **out);

/*
 Seeded randomized search; deterministic for fixed arguments.

 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_search_randomized(const struct PrmField *field,
                                     uint32_t obj,
                                     uint32_t d,
                                     uint32_t m,
                                     uint32_t r,
                                     uint64_t seed,
                                     uint64_t iterations,
                                     uint32_t chains,
                                     uint32_t workers,
                                     struct PrmSearch **out);

/*
 # Safety
 `s` must be null or a live search handle.
 */
void prm_search_free(struct PrmSearch *s);

/*
 Best objective value found, or 0 for a null handle.

 # Safety
 `s` must be null or a live search handle.
 */
uint64_t prm_search_best_value(const struct PrmSearch *s);

/*
 Full report as JSON; free with [`prm_string_free`]. Null on a null handle.

 # Safety
 `s` must be null or a live search handle.
 */
char *prm_search_to_json(const struct PrmSearch *s);

/*
 `d_r(PRM_q(d, m))` by subcode support enumeration, cross-checked against
 the zero-count search; a disagreement is `VerificationFailed`.

 # Safety
 `field` must be a live handle and `out` a valid pointer.
 */
enum PrmStatus prm_ghw(const struct PrmField *field,
                       uint32_t d,
                       uint32_t m,
                       uint32_t r,
                       uint32_t workers,
                       uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRM_H */
