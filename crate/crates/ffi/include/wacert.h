#ifndef WACERT_H
#define WACERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WacertStatus {
  WACERT_STATUS_OK = 0,
  /**
   * A mathematical check failed.
   */
  WACERT_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed or out-of-range input.
   */
  WACERT_STATUS_INVALID_INPUT = 2,
  WACERT_STATUS_NULL_POINTER = 3,
  /**
   * A panic was caught at the boundary.
   */
  WACERT_STATUS_INTERNAL = 4,
} WacertStatus;

/**
 * A construction certificate.
 */
typedef struct WacertCertificate WacertCertificate;

/**
 * A quadratic field Q(sqrt(delta0)), or Q for delta0 = 1.
 */
typedef struct WacertField WacertField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Valid until
 * the next call into this library on the same thread.
 */
const char *wacert_last_error(void);

/**
 * Static version string.
 */
const char *wacert_version(void);

void wacert_string_free(char *s);

enum WacertStatus wacert_field_new(int64_t delta0, struct WacertField **out);

void wacert_field_free(struct WacertField *field);

/**
 * (s, t)_v. Over Q, v is a rational prime or "inf"; otherwise v is an odd
 * prime element.
 */
enum WacertStatus wacert_hilbert(const struct WacertField *field,
                                 const char *s,
                                 const char *t,
                                 const char *v,
                                 int8_t *out);

/**
 * Builds a certificate. `params` is "a,b,c,e" or NULL to search; `radius`
 * 0 selects the default search radius.
 */
enum WacertStatus wacert_construct(const struct WacertField *field,
                                   const char *params,
                                   uint64_t radius,
                                   struct WacertCertificate **out);

void wacert_certificate_free(struct WacertCertificate *cert);

/**
 * Canonical JSON of the certificate.
 */
enum WacertStatus wacert_certificate_to_json(const struct WacertCertificate *cert, char **out);

/**
 * Parses a certificate without verifying it.
 */
enum WacertStatus wacert_certificate_from_json(const char *json, struct WacertCertificate **out);

/**
 * WACERT_STATUS_OK when every component re-verifies.
 */
enum WacertStatus wacert_certificate_verify(const struct WacertCertificate *cert);

/**
 * Full report for the example over Q as JSON; CHECK_FAILED (with the report
 * still written) if some check fails.
 */
enum WacertStatus wacert_verify_example(char **out);

/**
 * Report for table row `row` (1-based) as JSON.
 */
enum WacertStatus wacert_verify_table_row(size_t row, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WACERT_H */
