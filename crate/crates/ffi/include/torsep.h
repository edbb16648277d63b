#ifndef TORSEP_H
#define TORSEP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorsepStatus {
  TORSEP_STATUS_OK = 0,
  TORSEP_STATUS_NULL_POINTER = 1,
  TORSEP_STATUS_INVALID_INPUT = 2,
  TORSEP_STATUS_RESOURCE_CAP = 3,
  TORSEP_STATUS_OVERFLOW = 4,
  TORSEP_STATUS_BUFFER_TOO_SMALL = 5,
  TORSEP_STATUS_INTERNAL = 6,
} TorsepStatus;

/**
 * A torus representation given by its weight matrix.
 */
typedef struct TorsepRep TorsepRep;

/**
 * A finitely generated monomial semigroup.
 */
typedef struct TorsepSemigroup TorsepSemigroup;

typedef struct TorsepSvBounds {
  uint8_t case_;
  int64_t s_lower;
  int64_t s_upper;
  int64_t s_prime_lower;
  int64_t s_prime_upper;
} TorsepSvBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *torsep_last_error(void);

/**
 * Library version, a static string.
 */
const char *torsep_version(void);

/**
 * Builds a representation from `n` weight columns of length `rank`, stored
 * column after column in `weights`.
 */
enum TorsepStatus torsep_rep_new(const int64_t *weights,
                                 size_t rank,
                                 size_t n,
                                 struct TorsepRep **out_rep);

void torsep_rep_free(struct TorsepRep *rep);

/**
 * Rank `r`, or 0 for a null handle.
 */
size_t torsep_rep_rank(const struct TorsepRep *rep);

/**
 * Number of coordinates `n`, or 0 for a null handle.
 */
size_t torsep_rep_dim(const struct TorsepRep *rep);

/**
 * Hilbert basis of the invariant semigroup as a new semigroup handle.
 */
enum TorsepStatus torsep_hilbert_basis(const struct TorsepRep *rep, struct TorsepSemigroup **out_s);

/**
 * Semigroup generated by `count` exponent vectors of length `n`, stored one
 * after another in `gens`.
 */
enum TorsepStatus torsep_semigroup_new(const uint64_t *gens,
                                       size_t count,
                                       size_t n,
                                       struct TorsepSemigroup **out_s);

void torsep_semigroup_free(struct TorsepSemigroup *s);

/**
 * Number of generators, or 0 for a null handle.
 */
size_t torsep_semigroup_len(const struct TorsepSemigroup *s);

/**
 * Length of each generator, or 0 for a null handle.
 */
size_t torsep_semigroup_dim(const struct TorsepSemigroup *s);

/**
 * Copies the generators row after row into `buf`, which must hold
 * `len * n` entries.
 */
enum TorsepStatus torsep_semigroup_copy(const struct TorsepSemigroup *s,
                                        uint64_t *buf,
                                        size_t buf_len);

/**
 * Hilbert basis elements supported on at most `bound` coordinates.
 */
enum TorsepStatus torsep_small_support_generators(const struct TorsepRep *rep,
                                                  size_t bound,
                                                  struct TorsepSemigroup **out_s);

/**
 * The separating set of invariant monomials on at most `2r + 1` coordinates.
 */
enum TorsepStatus torsep_construct_2rplus1(const struct TorsepRep *rep,
                                           struct TorsepSemigroup **out_s);

/**
 * Whether `s` generates a separating subalgebra in characteristic
 * `characteristic` (0 or a prime). In characteristic `p` a `false` means no
 * `m` up to the representation's cap was found.
 */
enum TorsepStatus torsep_check_separating(const struct TorsepRep *rep,
                                          const struct TorsepSemigroup *s,
                                          uint64_t characteristic,
                                          bool *out_separating);

/**
 * Bounds on the separating-set size of the Segre-Veronese cone with factor
 * sizes `n` and degrees `a`, both of length `r`.
 */
enum TorsepStatus torsep_sv_bounds(const uint64_t *n,
                                   const uint64_t *a,
                                   size_t r,
                                   uint64_t characteristic,
                                   struct TorsepSvBounds *out_bounds);

/**
 * Size of a minimal monomial separating set of the Segre-Veronese cone.
 */
enum TorsepStatus torsep_sv_monomial_min_size(const uint64_t *n,
                                              const uint64_t *a,
                                              size_t r,
                                              uint64_t characteristic,
                                              uint64_t *out_size);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORSEP_H */
