#ifndef CONGRUENT_THETA_H
#define CONGRUENT_THETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CtStatus {
  CT_STATUS_OK = 0,
  CT_STATUS_NULL_POINTER = 1,
  CT_STATUS_INVALID_ARGUMENT = 2,
  CT_STATUS_NOT_CONSTRUCTIBLE = 3,
  CT_STATUS_BAD_REDUCTION = 4,
  CT_STATUS_DOMAIN = 5,
  CT_STATUS_UNSUPPORTED = 6,
  CT_STATUS_NO_DECOMPOSITION = 7,
  // The value exists but does not fit the output type.
  CT_STATUS_OVERFLOW = 8,
  // A coefficient past the truncation was requested.
  CT_STATUS_UNKNOWN = 9,
  CT_STATUS_PANIC = 10,
} CtStatus;

// Opaque truncated q-series.
typedef struct CtSeries CtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, empty after a success.
// The pointer stays valid until the next library call on the same thread.
const char *ct_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
//
// `s` must come from this library and must not be used afterwards.
void ct_string_free(char *s);

// Frees a series handle. Null is ignored.
//
// # Safety
//
// `series` must come from this library and must not be used afterwards.
void ct_series_free(struct CtSeries *series);

// Theta series of `x1^2 + x2^2 + x3^2 + x4^2` with all `x_i = residue mod
// modulus`, known below `q^terms`.
//
// # Safety
//
// `out` must be a valid pointer to writable storage for one handle.
enum CtStatus ct_theta_series(int64_t residue,
                              uint64_t modulus,
                              uint64_t terms,
                              struct CtSeries **out);

// Expansion of the `index`-th (0-based) labelled basis element of level
// `p^k`, known below `q^terms`.
//
// # Safety
//
// `out` must be a valid pointer to writable storage for one handle.
enum CtStatus ct_basis_element(uint64_t p,
                               uint32_t k,
                               size_t index,
                               uint64_t terms,
                               struct CtSeries **out);

// Number of labelled basis elements at level `p^k`.
//
// # Safety
//
// `out` must be a valid pointer to writable storage.
enum CtStatus ct_basis_size(uint64_t p, uint32_t k, size_t *out);

// Coefficient of `q^n` as a reduced fraction `num / den`, `den > 0`.
// Fails with `Unknown` at or past the truncation, `Domain` for an
// irrational coefficient and `Overflow` if either part exceeds 64 bits.
//
// # Safety
//
// `series` must be a live handle; `num` and `den` must be writable.
enum CtStatus ct_series_coefficient(const struct CtSeries *series,
                                    int64_t n,
                                    int64_t *num,
                                    int64_t *den);

// Exponents below this bound are known. Returns 0 for a fractional bound.
//
// # Safety
//
// `series` must be a live handle.
uint64_t ct_series_truncation(const struct CtSeries *series);

// JSON form of the series. Free the result with [`ct_string_free`].
//
// # Safety
//
// `series` must be a live handle; `out` must be writable.
enum CtStatus ct_series_to_json(const struct CtSeries *series, char **out);

// Representation count of `n` by the congruent form with even Gram
// matrix `gram` (16 entries, row-major) and `x_i = residues[i] mod
// moduli[i]`.
//
// # Safety
//
// `gram` must point to 16 values, `residues` and `moduli` to 4 each, and
// `out` must be writable.
enum CtStatus ct_representation_count(const int64_t *gram,
                                      const int64_t *residues,
                                      const uint64_t *moduli,
                                      uint64_t n,
                                      uint64_t *out);

// Points over `F_p` (with infinity) and the trace `a_p = p + 1 - N_p(1)`
// of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
//
// # Safety
//
// `coeffs` must point to 5 values `a1, a2, a3, a4, a6`; `points` and
// `trace` must be writable.
enum CtStatus ct_curve_points(const int64_t *coeffs, uint64_t p, uint64_t *points, int64_t *trace);

// `N_p(k)` from the Frobenius recursion, as a decimal string. Free the
// result with [`ct_string_free`].
//
// # Safety
//
// `coeffs` must point to 5 values; `out` must be writable.
enum CtStatus ct_curve_points_extension(const int64_t *coeffs, uint64_t p, uint32_t k, char **out);

// Runs a verification suite. `bound` 0 keeps the suite default. Writes the
// JSON report to `out` and whether every case passed to `passed`.
//
// # Safety
//
// `name` must be a nul-terminated string; `out` and `passed` must be
// writable.
enum CtStatus ct_verify_suite(const char *name, uint64_t bound, char **out, bool *passed);

// Hex SHA-256 of the suite manifest. Free with [`ct_string_free`].
char *ct_manifest_hash(void);

// Library version; static, do not free.
const char *ct_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONGRUENT_THETA_H */
