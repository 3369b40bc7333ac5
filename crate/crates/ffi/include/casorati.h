#ifndef CASORATI_H
#define CASORATI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CasoratiStatus {
  CASORATI_STATUS_OK = 0,
  CASORATI_STATUS_NULL_POINTER = 1,
  CASORATI_STATUS_INVALID_UTF8 = 2,
  CASORATI_STATUS_PARSE = 3,
  CASORATI_STATUS_CONFIG = 4,
  CASORATI_STATUS_INVALID_PARAMETER = 5,
  CASORATI_STATUS_ZERO_GAMMA = 6,
  CASORATI_STATUS_BUDGET_EXCEEDED = 7,
  CASORATI_STATUS_COMPUTATION = 8,
  CASORATI_STATUS_PANIC = 9,
} CasoratiStatus;

/*
 A polynomial with Gaussian-rational coefficients.
 */
typedef struct CasoratiPoly CasoratiPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *casorati_last_error(void);

/*
 Library version as a static string.
 */
const char *casorati_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void casorati_string_free(char *s);

/*
 Parses comma-separated coefficients, lowest degree first, e.g. `"1, -1/2, 3+2i"`.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CasoratiStatus casorati_poly_parse(const char *text, struct CasoratiPoly **out);

/*
 # Safety
 `p` must come from this library and not have been freed. Null is ignored.
 */
void casorati_poly_free(struct CasoratiPoly *p);

/*
 Degree of `p`; the zero polynomial reports -1.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum CasoratiStatus casorati_poly_degree(const struct CasoratiPoly *p, int64_t *out);

/*
 Coefficients of `p` in the format accepted by [`casorati_poly_parse`].

 # Safety
 `p` must be a live handle; `out` must be writable. Free the result with [`casorati_string_free`].
 */
enum CasoratiStatus casorati_poly_coefficients(const struct CasoratiPoly *p, char **out);

/*
 Human-readable form of `p`, e.g. `x^2 - 1`.

 # Safety
 As for [`casorati_poly_coefficients`].
 */
enum CasoratiStatus casorati_poly_to_string(const struct CasoratiPoly *p, char **out);

/*
 Wronskian `det(f_k^{(j-1)})` of `n` polynomials.

 # Safety
 `fs` must point to `n` live handles; `out` must be writable.
 */
enum CasoratiStatus casorati_wronskian(const struct CasoratiPoly *const *fs,
                                       size_t n,
                                       struct CasoratiPoly **out);

/*
 Real-shift Casoratian `det f_k(x + j - 1)`.

 # Safety
 As for [`casorati_wronskian`].
 */
enum CasoratiStatus casorati_casoratian_real(const struct CasoratiPoly *const *fs,
                                             size_t n,
                                             struct CasoratiPoly **out);

/*
 Imaginary-shift Casoratian with step `gamma`, a rational such as `"1/2"`.

 # Safety
 As for [`casorati_wronskian`]; `gamma` must be a NUL-terminated string.
 */
enum CasoratiStatus casorati_casoratian_imag(const struct CasoratiPoly *const *fs,
                                             size_t n,
                                             const char *gamma,
                                             struct CasoratiPoly **out);

/*
 Runs a flat `key = value` configuration (the CLI's `--config` format, `subcommand` key
 required) and returns the JSON run report. `exit_code` receives the CLI exit code for
 the run. The `out` and `csv` keys are ignored.

 # Safety
 `config` must be a NUL-terminated string; `report_json` and `exit_code` must be writable.
 Free the report with [`casorati_string_free`].
 */
enum CasoratiStatus casorati_run(const char *config, char **report_json, int32_t *exit_code);

/*
 Re-runs a witness (or a report carrying one) and returns the reproduced report as JSON.
 `exit_code` receives 0 for pass, 1 for fail and 3 for inconclusive.

 # Safety
 As for [`casorati_run`].
 */
enum CasoratiStatus casorati_replay(const char *witness_json,
                                    char **report_json,
                                    int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CASORATI_H */
