/* C interface to the korteweg solitary-wave stability library.
 *
 * Every fallible call returns a kw_status; on failure the message is
 * available from kw_last_error() on the same thread until the next call.
 * Strings handed out by kw_render_* belong to the caller and are released
 * with kw_string_free. Handles are immutable after creation and may be
 * shared between threads.
 */
#ifndef KORTEWEG_H
#define KORTEWEG_H

#include <stddef.h>

#if defined(KW_BUILDING_LIBRARY)
#define KW_API __attribute__((visibility("default")))
#else
#define KW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define KW_ABI_VERSION 1

typedef enum kw_status {
  KW_OK = 0,
  KW_ERR_INVALID_ARGUMENT = 1,
  KW_ERR_CONFIG = 2,
  KW_ERR_NOT_ADMISSIBLE = 3,
  KW_ERR_NO_HOMOCLINIC = 4,
  KW_ERR_QUADRATURE_FAILURE = 5,
  KW_ERR_SPLITTING_LOST = 6,
  KW_ERR_INTEGRATION_FAILURE = 7,
  KW_ERR_NORMALIZATION_OVERFLOW = 8,
  KW_ERR_FIT_UNSTABLE = 9,
  KW_ERR_DEGENERATE_CASE = 10,
  KW_ERR_DEGENERATE_INDEX = 11,
  KW_ERR_IO = 12,
  KW_ERR_INTERNAL = 99
} kw_status;

typedef enum kw_format { KW_FORMAT_CSV = 0, KW_FORMAT_JSON = 1 } kw_format;

typedef enum kw_normalization {
  KW_NORM_UNIT = 0,
  KW_NORM_PAPER = 1
} kw_normalization;

typedef enum kw_column {
  KW_COL_X = 0,
  KW_COL_VBAR = 1,
  KW_COL_VBAR_X = 2,
  KW_COL_VBAR_XX = 3,
  KW_COL_UBAR = 4
} kw_column;

typedef enum kw_verdict {
  KW_VERDICT_STABLE = 0,
  KW_VERDICT_UNSTABLE = 1,
  KW_VERDICT_DEGENERATE = 2
} kw_verdict;

typedef struct kw_model kw_model;
typedef struct kw_profile kw_profile;

KW_API int kw_abi_version(void);
KW_API const char* kw_last_error(void);
KW_API const char* kw_status_name(kw_status status);
KW_API void kw_string_free(char* s);

/* ---- model ---- */
KW_API kw_status kw_model_default(kw_model** out);
KW_API kw_status kw_model_quadratic(double kappa, double a, double b,
                                    double v_inf, double u_inf,
                                    kw_model** out);
KW_API kw_status kw_model_van_der_waals(double kappa, double rt, double acoh,
                                        double bcov, double v_inf,
                                        double u_inf, kw_model** out);
/* key = value text, see the README for keys. */
KW_API kw_status kw_model_parse(const char* text, kw_model** out);
KW_API kw_status kw_model_load(const char* path, kw_model** out);
KW_API void kw_model_free(kw_model* model);
KW_API kw_status kw_model_describe(const kw_model* model, char** out);

/* margin = s^2 + p'(v_inf); admissible iff margin < 0. */
KW_API kw_status kw_saddle_check(const kw_model* model, double s,
                                 int* admissible, double* margin);
KW_API kw_status kw_constant_C(const kw_model* model, double s, double* out);

/* ---- profile ---- */
typedef struct kw_profile_options {
  double tail_tol;    /* default 1e-12 */
  double nu_h;        /* default 0.05 */
  double half_length; /* <= 0: automatic */
  double step;        /* <= 0: automatic */
} kw_profile_options;

KW_API void kw_profile_options_default(kw_profile_options* opts);

typedef struct kw_profile_info {
  double s;
  double half_length;
  double step;
  size_t size;
  double crest;
  double nu;
  double tail_amp_plus;
  double tail_amp_minus;
  int node_count;
} kw_profile_info;

/* opts may be NULL for defaults. */
KW_API kw_status kw_profile_solve(const kw_model* model, double s,
                                  const kw_profile_options* opts,
                                  kw_profile** out);
KW_API void kw_profile_free(kw_profile* profile);
KW_API kw_status kw_profile_get_info(const kw_profile* profile,
                                     kw_profile_info* out);
/* Copies one column; len must equal info.size. */
KW_API kw_status kw_profile_column(const kw_profile* profile, kw_column col,
                                   double* buf, size_t len);
KW_API kw_status kw_profile_eval(const kw_profile* profile, double x,
                                 double* vbar, double* vbar_x);

/* ---- functionals ---- */
typedef struct kw_moment {
  double s, Q, H, m;
  double dQ_ds, d2m_direct, dm_ds;
  double gamma, gamma_alt;
  double P1_v, P1_u;
  double cross_check_gap, melnikov_gap;
  int consistent;
} kw_moment;

/* ds <= 0 picks 1e-3 max(1, |s|). */
KW_API kw_status kw_moment_report(const kw_model* model, double s, double ds,
                                  const kw_profile_options* opts,
                                  kw_moment* out);

/* ---- Evans function ---- */
typedef struct kw_evans_sample {
  double lambda_re, lambda_im;
  double D_re, D_im;
  double renorm_log;
  double plucker_drift;
} kw_evans_sample;

KW_API kw_status kw_evans_at(const kw_profile* profile, double lambda_re,
                             double lambda_im, kw_normalization norm,
                             kw_evans_sample* out);

typedef struct kw_analysis_options {
  kw_profile_options profile;
  kw_normalization normalization; /* default KW_NORM_PAPER */
  double ds;                      /* <= 0: automatic */
  double fit_radius;              /* <= 0: automatic */
  int fit_samples;                /* default 12 */
  double ratio_tol;               /* default 0.05 */
  double lambda_max;              /* <= 0: large-lambda heuristic */
  int threads;                    /* <= 0: hardware concurrency */
} kw_analysis_options;

KW_API void kw_analysis_options_default(kw_analysis_options* opts);

typedef struct kw_theorem {
  double s, kappa;
  double d2m_ds2;
  double D0, D1, D2;
  double sd0, sd1, sd2;
  double C;
  double predicted_ratio; /* -C / kappa */
  double measured_ratio;  /* D''(0) / (d^2m/ds^2) */
  int signs_agree;
  int ratio_agrees;
  int degenerate;
} kw_theorem;

/* Fails with KW_ERR_DEGENERATE_CASE at threshold speeds. */
KW_API kw_status kw_verify_theorem(const kw_model* model, double s,
                                   const kw_analysis_options* opts,
                                   kw_theorem* out);

typedef struct kw_stability {
  kw_verdict verdict;
  int Gamma_index;
  int sign_D_infinity;
  int node_count;
  size_t root_count;
  double first_root; /* NaN when root_count == 0 */
  double lambda_max;
  double d2m_ds2;
  double D2;
} kw_stability;

KW_API kw_status kw_stability_verdict(const kw_model* model, double s,
                                      const kw_analysis_options* opts,
                                      kw_stability* out);

/* out receives 4 n values per xi: plus_re, plus_im, minus_re, minus_im. */
KW_API kw_status kw_dispersion(const kw_model* model, double s,
                               const double* xi, size_t n, double* out);

/* Stability index sgn(D2 sign_inf); KW_ERR_DEGENERATE_INDEX when
 * |D2| <= uncertainty. */
KW_API kw_status kw_stability_index(double D2, int sign_inf,
                                    double uncertainty, int* out);

/* ---- rendered reports ---- */
KW_API kw_status kw_render_profile(const kw_profile* profile, kw_format fmt,
                                   char** out);
KW_API kw_status kw_render_moment_sweep(const kw_model* model,
                                        const double* speeds, size_t n,
                                        const kw_analysis_options* opts,
                                        kw_format fmt, char** out);
KW_API kw_status kw_render_evans_scan(const kw_profile* profile,
                                      const double* lambda_re,
                                      const double* lambda_im, size_t n,
                                      kw_normalization norm, int threads,
                                      kw_format fmt, char** out);
KW_API kw_status kw_render_verify(const kw_model* model, double s,
                                  const kw_analysis_options* opts,
                                  kw_format fmt, char** out);
KW_API kw_status kw_render_dispersion(const kw_model* model, double s,
                                      const double* xi, size_t n,
                                      kw_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif /* KORTEWEG_H */
