#ifndef TWINKIT_H
#define TWINKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TkDecomposition {
  TK_DECOMPOSITION_BRUHAT = 0,
  TK_DECOMPOSITION_BIRKHOFF = 1,
  TK_DECOMPOSITION_ULT = 2,
} TkDecomposition;

typedef enum TkSign {
  TK_SIGN_PLUS = 0,
  TK_SIGN_MINUS = 1,
} TkSign;

typedef enum TkStatus {
  TK_STATUS_OK = 0,
  /**
   * A check or decomposition ran and reported a failure.
   */
  TK_STATUS_CHECK_FAILED = 1,
  TK_STATUS_INVALID_INPUT = 2,
  TK_STATUS_NULL_POINTER = 3,
  /**
   * The model has no chambers (Kac-Moody models).
   */
  TK_STATUS_NOT_A_BUILDING = 4,
  TK_STATUS_OUT_OF_RANGE = 5,
  TK_STATUS_PANIC = 6,
} TkStatus;

/**
 * Opaque model handle.
 */
typedef struct TkModel TkModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *tk_version(void);

/**
 * Message for the last failing call on this thread; empty after success.
 * Valid until the next call on this thread.
 */
const char *tk_last_error(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void tk_string_free(char *s);

/**
 * Build a model from a run configuration in JSON, e.g.
 * `{"model": "sl", "n": 3, "p": 2}`.
 *
 * # Safety
 * `config_json` is a NUL-terminated string and `out` is writable.
 */
enum TkStatus tk_model_new(const char *config_json, struct TkModel **out);

/**
 * # Safety
 * `model` is null or a live handle from [`tk_model_new`].
 */
void tk_model_free(struct TkModel *model);

/**
 * # Safety
 * `model` is a live handle and `out` is writable.
 */
enum TkStatus tk_model_chamber_count(const struct TkModel *model, enum TkSign sign, size_t *out);

/**
 * `delta(x, y)` within one half, as a dotted word (`"e"`, `"1.2"`).
 *
 * # Safety
 * `model` is a live handle and `out` is writable.
 */
enum TkStatus tk_model_distance(const struct TkModel *model,
                                enum TkSign sign,
                                size_t x,
                                size_t y,
                                char **out);

/**
 * `delta*(plus, minus)` between chambers of opposite halves.
 *
 * # Safety
 * `model` is a live handle and `out` is writable.
 */
enum TkStatus tk_model_codistance(const struct TkModel *model,
                                  size_t plus,
                                  size_t minus,
                                  char **out);

/**
 * Run check suites and write the JSON report. `suites` is a comma separated
 * list or null for every suite the model supports. Returns `Ok` when all
 * suites pass and `CheckFailed` otherwise; the report is written in both
 * cases.
 *
 * # Safety
 * `model` is a live handle, `suites` is null or NUL-terminated and
 * `report_json` is writable.
 */
enum TkStatus tk_model_check(const struct TkModel *model,
                             const char *suites,
                             uint64_t seed,
                             char **report_json);

/**
 * Decompose the row-major `n x n` integer matrix over `F_p` and write the
 * JSON witness. `CheckFailed` means an `Ult` input outside the big cell.
 *
 * # Safety
 * `entries` points to `n * n` values and `out_json` is writable.
 */
enum TkStatus tk_decompose(enum TkDecomposition kind,
                           uint32_t p,
                           size_t n,
                           const int64_t *entries,
                           char **out_json);

/**
 * Canonical code of the Dynkin tree of a row-major `n x n` GCM.
 *
 * # Safety
 * `gcm` points to `n * n` values and `out` is writable.
 */
enum TkStatus tk_dynkin_code(size_t n, const int64_t *gcm, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWINKIT_H */
