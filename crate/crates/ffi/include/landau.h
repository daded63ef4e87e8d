#ifndef LANDAU_H
#define LANDAU_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LandauStatus {
  LANDAU_STATUS_OK = 0,
  LANDAU_STATUS_NULL_POINTER = 1,
  LANDAU_STATUS_INVALID_UTF8 = 2,
  LANDAU_STATUS_INVALID_PARAMS = 3,
  LANDAU_STATUS_INVALID_ARGUMENT = 4,
  LANDAU_STATUS_PARSE = 5,
  LANDAU_STATUS_DEGREE_OVERFLOW = 6,
  LANDAU_STATUS_ORIGIN_MISMATCH = 7,
  LANDAU_STATUS_TRUNCATION = 8,
  LANDAU_STATUS_SUPPORT_OVERFLOW = 9,
  LANDAU_STATUS_UNKNOWN_OBSERVABLE = 10,
  LANDAU_STATUS_IO = 11,
  LANDAU_STATUS_OUT_OF_RANGE = 12,
  LANDAU_STATUS_PANIC = 13,
} LandauStatus;

typedef enum LandauScheme {
  LANDAU_SCHEME_GAUSS_HERMITE = 0,
  LANDAU_SCHEME_SIMPSON = 1,
} LandauScheme;

typedef enum LandauCampaign {
  LANDAU_CAMPAIGN_VERIFY_ALGEBRA = 0,
  LANDAU_CAMPAIGN_GAUGE_SCAN = 1,
  LANDAU_CAMPAIGN_REPRODUCE_TABLES = 2,
  LANDAU_CAMPAIGN_CLASSICAL_SIM = 3,
  LANDAU_CAMPAIGN_BASIS_CHANGE = 4,
  LANDAU_CAMPAIGN_HEISENBERG_DEMO = 5,
} LandauCampaign;

typedef struct LandauGauge LandauGauge;

typedef struct LandauOperator LandauOperator;

typedef struct LandauParams LandauParams;

typedef struct LandauReport LandauReport;

/*
 Numerical settings of a campaign. `tol` replaces every tolerance when it
 is finite; pass NaN to keep the defaults.
 */
typedef struct LandauSettings {
  size_t nmax;
  size_t margin;
  size_t grid;
  enum LandauScheme scheme;
  double tol;
  uint64_t seed;
} LandauSettings;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. Free the result
 with [`landau_string_free`].
 */
char *landau_last_error(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void landau_string_free(char *s);

/*
 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum LandauStatus landau_params_new(double mass,
                                    double charge,
                                    double field,
                                    double hbar,
                                    struct LandauParams **out);

/*
 # Safety
 `p` must be NULL or a handle from [`landau_params_new`].
 */
void landau_params_free(struct LandauParams *p);

/*
 Cyclotron frequency `|q B| / m`, or NaN for a NULL handle.

 # Safety
 `p` must be NULL or a live params handle.
 */
double landau_params_omega_c(const struct LandauParams *p);

/*
 Magnetic length `sqrt(hbar / (m omega_c))`, or NaN for a NULL handle.

 # Safety
 `p` must be NULL or a live params handle.
 */
double landau_params_magnetic_length(const struct LandauParams *p);

/*
 A gauge with origin `(x01, x02)`; `phi` is a polynomial in `u1`, `u2`
 such as `"0.2*u1^2 - u1*u2"`. NULL `phi` means zero.

 # Safety
 `phi` must be NULL or a NUL-terminated string; `out` must be writable.
 */
enum LandauStatus landau_gauge_new(double alpha,
                                   double x01,
                                   double x02,
                                   const char *phi,
                                   struct LandauGauge **out);

/*
 # Safety
 `g` must be NULL or a handle from [`landau_gauge_new`].
 */
void landau_gauge_free(struct LandauGauge *g);

/*
 Truncated Fock matrix of the observable `name` (`H`, `T1`, `T2`, `M3`,
 `p1`, `p2`, `L3`, `Xc1`, `Xc2`, `x1`, `x2`) with `n+-` up to `nmax`.

 # Safety
 `params` and `gauge` must be live handles, `name` a NUL-terminated string
 and `out` writable.
 */
enum LandauStatus landau_operator_new(const struct LandauParams *params,
                                      const struct LandauGauge *gauge,
                                      const char *name,
                                      size_t nmax,
                                      struct LandauOperator **out);

/*
 # Safety
 `op` must be NULL or a handle from [`landau_operator_new`].
 */
void landau_operator_free(struct LandauOperator *op);

/*
 Dimension `(nmax + 1)^2`, or 0 for a NULL handle.

 # Safety
 `op` must be NULL or a live operator handle.
 */
size_t landau_operator_dim(const struct LandauOperator *op);

/*
 `<n+, n-| O |m+, m->`.

 # Safety
 `op` must be a live handle; `re` and `im` writable.
 */
enum LandauStatus landau_operator_element(const struct LandauOperator *op,
                                          size_t bra_plus,
                                          size_t bra_minus,
                                          size_t ket_plus,
                                          size_t ket_minus,
                                          double *re,
                                          double *im);

/*
 `<x| n+, n->` in the given gauge.

 # Safety
 Handles must be live; `re` and `im` writable.
 */
enum LandauStatus landau_psi_fock(const struct LandauParams *params,
                                  const struct LandauGauge *gauge,
                                  uint32_t n_plus,
                                  uint32_t n_minus,
                                  double x1,
                                  double x2,
                                  double *re,
                                  double *im);

/*
 Defaults of the command-line tool.
 */
struct LandauSettings landau_settings_default(void);

/*
 Runs a campaign. The gauge scan adds the seeded default gauges after
 `gauge`; the classical run uses a unit-energy orbit centred on the origin.

 # Safety
 Handles must be live; `settings` readable; `out` writable.
 */
enum LandauStatus landau_run_campaign(enum LandauCampaign campaign,
                                      const struct LandauParams *params,
                                      const struct LandauGauge *gauge,
                                      const struct LandauSettings *settings,
                                      struct LandauReport **out);

/*
 # Safety
 `r` must be NULL or a handle from [`landau_run_campaign`].
 */
void landau_report_free(struct LandauReport *r);

/*
 Overall pass flag; false for a NULL handle.

 # Safety
 `r` must be NULL or a live report handle.
 */
bool landau_report_pass(const struct LandauReport *r);

/*
 # Safety
 `r` must be NULL or a live report handle.
 */
size_t landau_report_check_count(const struct LandauReport *r);

/*
 Largest deviation over all checks, or NaN for a NULL handle.

 # Safety
 `r` must be NULL or a live report handle.
 */
double landau_report_max_deviation(const struct LandauReport *r);

/*
 The report as JSON; NULL on failure. Free with [`landau_string_free`].

 # Safety
 `r` must be NULL or a live report handle.
 */
char *landau_report_json(const struct LandauReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LANDAU_H */
