/* C ABI for the idealzeta library. Generated by cbindgen; do not edit. */

#ifndef IDEALZETA_H
#define IDEALZETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible function.
typedef enum IzStatus {
  IZ_OK = 0,
  IZ_NULL_POINTER = 1,
  IZ_INVALID_UTF8 = 2,
  IZ_PARSE_ERROR = 3,
  IZ_NOT_MONIC = 4,
  IZ_DEGREE_ZERO = 5,
  IZ_INVALID_ARGUMENT = 6,
  IZ_RESOURCE_LIMIT = 7,
  IZ_OVERFLOW = 8,
  IZ_BUFFER_TOO_SMALL = 9,
  IZ_INTERNAL = 10,
} IzStatus;

// Opaque handle to a parsed monic polynomial.
typedef struct IzPoly IzPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *iz_version(void);

// Parses a polynomial expression in `t` (for example "t^2*(t-3)") and
// returns an owning handle through `out`.  Free it with `iz_poly_free`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum IzStatus iz_poly_parse(const char *text, struct IzPoly **out);

// Releases a handle returned by `iz_poly_parse`.  Null is ignored.
//
// # Safety
// `poly` must be null or a pointer previously returned by `iz_poly_parse`
// that has not been freed yet.
void iz_poly_free(struct IzPoly *poly);

// Degree of the polynomial; 0 for a null handle.
//
// # Safety
// `poly` must be null or a live handle.
uint32_t iz_poly_degree(const struct IzPoly *poly);

// Writes the canonical rendering (for example "t^3 - 3*t^2").
//
// # Safety
// `poly` must be a live handle; `buf`/`written` follow the buffer protocol.
enum IzStatus iz_poly_render(const struct IzPoly *poly, char *buf, size_t buf_len, size_t *written);

// Number of ideals of index exactly `index`.
//
// # Safety
// `poly` must be a live handle and `out_count` a valid pointer.
enum IzStatus iz_count_ideals(const struct IzPoly *poly,
                              uint64_t index,
                              uint64_t resource_cap,
                              uint64_t *out_count);

// Fills `out_counts[0..bound]` with a(1..=bound).
//
// # Safety
// `poly` must be a live handle; `out_counts` must point to `bound` slots.
enum IzStatus iz_count_ideals_upto(const struct IzPoly *poly,
                                   uint64_t bound,
                                   uint64_t resource_cap,
                                   uint64_t *out_counts);

// Fills `out[0..=max_exponent]` with the local ideal counts a(p^e)
// obtained by direct enumeration.
//
// # Safety
// `poly` must be a live handle; `out` must point to `max_exponent + 1`
// slots.
enum IzStatus iz_local_ideal_counts(const struct IzPoly *poly,
                                    uint64_t prime,
                                    uint32_t max_exponent,
                                    uint64_t resource_cap,
                                    uint64_t *out);

// Fills `out[0..bound]` with the closed-form coefficients of the ideal
// count series of t^n (the shifted zeta product).  Fails with `IzOverflow`
// when a coefficient does not fit in 64 bits.
//
// # Safety
// `out` must point to `bound` slots.
enum IzStatus iz_series_tn(uint32_t n, uint64_t bound, uint64_t *out);

// Writes the exact p-adic volume at the given diagonal valuations as a
// rational string ("1/2", "0", ...).
//
// # Safety
// `poly` must be a live handle; `valuations` must point to
// `valuations_len` entries; `buf`/`written` follow the buffer protocol.
enum IzStatus iz_mu_exact(const struct IzPoly *poly,
                          uint64_t prime,
                          const uint32_t *valuations,
                          size_t valuations_len,
                          uint64_t resource_cap,
                          char *buf,
                          size_t buf_len,
                          size_t *written);

// Writes the full comparison report (enumeration oracle vs volume
// reconstruction vs closed forms) as JSON, the same document the CLI
// prints for `compare --format json`.
//
// # Safety
// `poly` must be a live handle; `primes` must point to `primes_len`
// entries; `buf`/`written` follow the buffer protocol.
enum IzStatus iz_compare_json(const struct IzPoly *poly,
                              const uint64_t *primes,
                              size_t primes_len,
                              uint32_t max_exponent,
                              uint64_t resource_cap,
                              bool paper_mode,
                              char *buf,
                              size_t buf_len,
                              size_t *written);

// Number of distinct roots of the polynomial modulo a prime.
//
// # Safety
// `poly` must be a live handle and `out_roots` a valid pointer.
enum IzStatus iz_roots_mod_p(const struct IzPoly *poly, uint64_t prime, uint64_t *out_roots);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* IDEALZETA_H */
