#ifndef HODGE_H
#define HODGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HodgeStatus {
  HODGE_STATUS_OK = 0,
  HODGE_STATUS_NULL_POINTER = 1,
  HODGE_STATUS_INVALID_UTF8 = 2,
  // A rational or list failed to parse.
  HODGE_STATUS_PARSE_ERROR = 3,
  // Parameters are out of range, not increasing, resonant or empty.
  HODGE_STATUS_INVALID_PARAMS = 4,
  // The operation requires n > m.
  HODGE_STATUS_NOT_CONFLUENT = 5,
  // No admissible shift γ, or the supplied γ does not give strong non-resonance.
  HODGE_STATUS_NOT_STRONG = 6,
  // A value does not fit the requested integer type.
  HODGE_STATUS_OVERFLOW = 7,
  HODGE_STATUS_INDEX_OUT_OF_RANGE = 8,
  // A bug or panic inside the library.
  HODGE_STATUS_INTERNAL = 9,
} HodgeStatus;

// Validated hypergeometric parameters.
typedef struct HodgeParams HodgeParams;

// Result of comparing the closed formula with the nearby-cycle pipeline.
typedef struct HodgeReport HodgeReport;

// A multiset of rational jumps.
typedef struct HodgeSpectrum HodgeSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *hodge_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *hodge_version(void);

// Frees a string returned by this library. Null is ignored.
void hodge_string_free(char *s);

// Parses and validates comma-separated parameter lists such as `"1/3,2/3"`.
// An empty string is an empty list.
enum HodgeStatus hodge_params_new(const char *alpha, const char *beta, struct HodgeParams **out);

void hodge_params_free(struct HodgeParams *params);

// Writes n, m and μ = n - m.
enum HodgeStatus hodge_params_shape(const struct HodgeParams *params,
                                    size_t *n,
                                    size_t *m,
                                    int64_t *mu);

// Irregular Hodge spectrum from the closed formula. With `normalize` the
// smallest jump is 0; otherwise the jumps are ρ(k) as computed.
enum HodgeStatus hodge_spectrum_compute(const struct HodgeParams *params,
                                        bool normalize,
                                        struct HodgeSpectrum **out);

void hodge_spectrum_free(struct HodgeSpectrum *spectrum);

// Number of distinct jumps.
enum HodgeStatus hodge_spectrum_len(const struct HodgeSpectrum *spectrum, size_t *out);

// The `index`-th distinct jump in ascending order as `num/den` (den > 0),
// with its multiplicity. Fails with `Overflow` if the jump does not fit in i64.
enum HodgeStatus hodge_spectrum_get(const struct HodgeSpectrum *spectrum,
                                    size_t index,
                                    int64_t *num,
                                    int64_t *den,
                                    uint64_t *mult);

// JSON array `[{"jump":"p/q","mult":n}, ...]`.
enum HodgeStatus hodge_spectrum_to_json(const struct HodgeSpectrum *spectrum, char **out);

// Runs the nearby-cycle pipeline and compares it with the closed formula.
// `gamma` may be null to search for the shift, or a rational such as `"1/16"`.
// Requires n > m.
enum HodgeStatus hodge_verify(const struct HodgeParams *params,
                              const char *gamma,
                              struct HodgeReport **out);

void hodge_report_free(struct HodgeReport *report);

enum HodgeStatus hodge_report_agrees(const struct HodgeReport *report, bool *out);

// A new handle holding the normalized spectrum from the pipeline.
enum HodgeStatus hodge_report_oracle_spectrum(const struct HodgeReport *report,
                                              struct HodgeSpectrum **out);

// JSON object with keys alpha, beta, mu, gamma, spectrum, oracle, agrees, raw_shift.
enum HodgeStatus hodge_report_to_json(const struct HodgeReport *report, char **out);

// JSON object mapping H, H_mu, H_hat_mu, H_prime_mu, H_double_prime to
// their display strings. Requires n > m.
enum HodgeStatus hodge_operators_json(const struct HodgeParams *params, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HODGE_H */
