#ifndef CONESPEC_CONESPEC_H
#define CONESPEC_CONESPEC_H

/* C interface to the conespec library.
 *
 * Every fallible call returns a cs_status. On failure a message describing the
 * error is kept per thread and can be read with cs_last_error() until the next
 * call on the same thread. Objects returned through out-parameters are owned by
 * the caller and released with the matching *_free function.
 */

#include <stddef.h>

#if defined(CONESPEC_BUILDING_LIBRARY)
#define CONESPEC_API __attribute__((visibility("default")))
#else
#define CONESPEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_PARSE = 1,
  CS_ERR_DIMENSION = 2,
  CS_ERR_UNSUPPORTED_ATOM = 3,
  CS_ERR_UNSUPPORTED_DOMAIN = 4,
  CS_ERR_DIMENSION_MISMATCH = 5,
  CS_ERR_NON_INTEGER_MULTIPLICITY = 6,
  CS_ERR_CUTOFF_EXCEEDED = 7,
  CS_ERR_QUADRATURE_FAILURE = 8,
  CS_ERR_TOLERANCE_NOT_MET = 9,
  CS_ERR_NOT_POSITIVE_DEFINITE = 10,
  CS_ERR_INSUFFICIENT_MODES = 11,
  CS_ERR_NEGATIVE_DISCRIMINANT = 12,
  CS_ERR_ROOT_NOT_BRACKETED = 13,
  CS_ERR_DOMAIN_ERROR = 14,
  CS_ERR_OVERFLOW = 15,
  CS_ERR_INVALID_ARGUMENT = 16,
  CS_ERR_INTERNAL = 17
} cs_status;

typedef enum cs_bc { CS_DIRICHLET = 0, CS_NEUMANN = 1 } cs_bc;

typedef enum cs_method { CS_LINEAR = 0, CS_QUADRATIC = 1 } cs_method;

CONESPEC_API const char* cs_version(void);
CONESPEC_API const char* cs_status_name(cs_status status);

/* Message for the most recent failure on this thread ("" if none). */
CONESPEC_API const char* cs_last_error(void);
/* Byte offset of the most recent parse error on this thread. */
CONESPEC_API size_t cs_last_error_offset(void);

CONESPEC_API double cs_lambda_of_nu(double nu, int n);

/* ---- domains ---------------------------------------------------------- */

typedef struct cs_domain cs_domain;

CONESPEC_API cs_status cs_domain_parse(const char* text, cs_domain** out);
CONESPEC_API void cs_domain_free(cs_domain* d);
CONESPEC_API int cs_domain_ambient_dim(const cs_domain* d);
CONESPEC_API cs_status cs_domain_capabilities(const cs_domain* d, int* spectrum_exact, int* geometry_known);

/* Canonical text. Writes at most `capacity` bytes including the terminator;
 * `needed` (optional) receives the full length plus one. */
CONESPEC_API cs_status cs_domain_print(const cs_domain* d, char* buffer, size_t capacity, size_t* needed);

/* ---- spectra ---------------------------------------------------------- */

typedef struct cs_series cs_series;

CONESPEC_API cs_status cs_spectrum(const cs_domain* d, cs_bc bc, double nu_max, cs_series** out);
CONESPEC_API size_t cs_series_size(const cs_series* s);
CONESPEC_API cs_status cs_series_term(const cs_series* s, size_t index, double* nu, long long* multiplicity);
CONESPEC_API cs_status cs_series_count(const cs_series* s, double nu, long long* count);
CONESPEC_API void cs_series_free(cs_series* s);

/* ---- estimates -------------------------------------------------------- */

typedef struct cs_estimate_row {
  int k;
  double nu_ref;
  double nu;
  long long multiplicity;
  double lambda;
} cs_estimate_row;

typedef struct cs_report cs_report;

CONESPEC_API cs_status cs_estimate(const cs_domain* target, const cs_domain* reference, cs_bc bc, cs_method method,
                                   int modes, cs_report** out);
CONESPEC_API size_t cs_report_size(const cs_report* r);
CONESPEC_API cs_status cs_report_row(const cs_report* r, size_t index, cs_estimate_row* row);
CONESPEC_API void cs_report_free(cs_report* r);

/* ---- geometry and coefficients ---------------------------------------- */

typedef struct cs_coeffs {
  int n;
  double area;
  double boundary;
  double c0;
  double c1;
  double gamma;
  double a0;
  double a1;
  double a2;
  double b0;
  double b1;
  double b2; /* NaN when undefined (n = 2 without a closed form) */
  double p;
  double q;
  int b_from_closed_form; /* 1 if b0..b2 come from the closed-form spectral function */
} cs_coeffs;

CONESPEC_API cs_status cs_coeffs_compute(const cs_domain* d, cs_bc bc, cs_coeffs* out);
CONESPEC_API cs_status cs_domain_size(const cs_domain* d, double* area, double* boundary);

/* ---- verification ----------------------------------------------------- */

typedef struct cs_check {
  const char* name;
  double computed;
  double expected;
  double tolerance;
  int pass;
  const char* note;
} cs_check;

typedef struct cs_check_list cs_check_list;

/* suite: "all", "bessel", "mzf", "mhk", "functional", "sizes" or "weyl". */
CONESPEC_API cs_status cs_verify(const char* suite, int include_orthant3, cs_check_list** out);
CONESPEC_API cs_status cs_paper(cs_check_list** out);
CONESPEC_API size_t cs_check_list_size(const cs_check_list* l);
/* Strings in `out` stay valid until the list is freed. */
CONESPEC_API cs_status cs_check_list_get(const cs_check_list* l, size_t index, cs_check* out);
CONESPEC_API void cs_check_list_free(cs_check_list* l);

#ifdef __cplusplus
}
#endif

#endif /* CONESPEC_CONESPEC_H */
