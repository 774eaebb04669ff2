#ifndef EDGESTAT_EDGESTAT_H
#define EDGESTAT_EDGESTAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(EDGESTAT_BUILDING)
#define ES_API __attribute__((visibility("default")))
#else
#define ES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    ES_OK = 0,
    ES_ERR_CONTRACT = 1,  /* invalid argument or violated precondition */
    ES_ERR_RANGE = 2,     /* result outside the floating range */
    ES_ERR_ACCURACY = 3,  /* a certificate exceeded its tolerance; see es_last_error_bound */
    ES_ERR_NUMERICAL = 4, /* non-convergence or an asserted residual */
    ES_ERR_DROP_RATE = 5, /* too many Monte Carlo replicas dropped */
    ES_ERR_IO = 6,
    ES_ERR_INTERNAL = 7
} es_status;

typedef struct es_kernel es_kernel;
typedef struct es_curve es_curve;
typedef struct es_mc_result es_mc_result;

typedef struct {
    double xi;
    double eta;
} es_point;

/* Message of the last failure on the calling thread. */
ES_API const char* es_last_error(void);
/* Certificate value attached to the last ES_ERR_ACCURACY on the calling thread. */
ES_API double es_last_error_bound(void);
ES_API const char* es_version(void);

typedef enum {
    ES_KERNEL_FINITE = 0,         /* n, tau; direct sum */
    ES_KERNEL_FINITE_CONTOUR = 1, /* n, tau; double contour quadrature */
    ES_KERNEL_GINIBRE = 2,        /* n */
    ES_KERNEL_INTERP = 3,         /* sigma */
    ES_KERNEL_AIRY = 4,           /* line kernel, eta ignored */
    ES_KERNEL_AIRY2D = 5,
    ES_KERNEL_POISSON_P = 6,
    ES_KERNEL_POISSON_P1 = 7,
    ES_KERNEL_POISSON_P2 = 8
} es_kernel_kind;

ES_API es_status es_kernel_create(es_kernel_kind kind, int n, double tau, double sigma, es_kernel** out);
ES_API es_status es_kernel_eval(const es_kernel* k, es_point z1, es_point z2, double* re, double* im);
ES_API void es_kernel_destroy(es_kernel* k);

typedef enum { ES_REGIME_GUMBEL = 0, ES_REGIME_INTERP = 1 } es_regime;

typedef struct {
    double a;
    double b;
    double c;
    double sigma_n;
    es_regime regime;
} es_scaling;

ES_API es_status es_scaling_params(int n, double tau, es_regime regime, es_scaling* out);
/* tau_n = 1 - sigma^2 n^{-1/3}. */
ES_API es_status es_tau_for_sigma(int n, double sigma, double* tau);

typedef enum {
    ES_CURVE_GUMBEL = 0,
    ES_CURVE_TRACY_WIDOM = 1,
    ES_CURVE_INTERP = 2,          /* F_sigma(t) */
    ES_CURVE_INTERP_RESCALED = 3, /* F_sigma(c_sigma + a_sigma t), sigma > 1 */
    ES_CURVE_FINITE = 4           /* exact finite-n law of the rescaled max real part */
} es_curve_kind;

typedef struct {
    es_curve_kind kind;
    double sigma;
    int n;
    double tau;
    es_regime regime;
    int grid_m; /* half-line nodes (Tracy-Widom); 0 selects the default */
    int m_xi;   /* plane grid nodes; 0 selects the defaults */
    int m_eta;
} es_curve_config;

/* Fills cfg with defaults for kind. */
ES_API void es_curve_config_init(es_curve_config* cfg, es_curve_kind kind);

ES_API es_status es_curve_compute(const es_curve_config* cfg, double t_min, double t_max, double t_step, int threads,
                                  es_curve** out);
ES_API es_status es_curve_from_arrays(const double* t, const double* F, const double* tail, size_t count,
                                      es_curve** out);
ES_API size_t es_curve_size(const es_curve* c);
ES_API es_status es_curve_get(const es_curve* c, size_t i, double* t, double* F, double* tail);
/* format is "csv" or "json"; keys/values become header lines (CSV) or the meta object (JSON). */
ES_API es_status es_curve_write(const es_curve* c, const char* path, const char* format, const char* const* keys,
                                const char* const* values, size_t meta_count);
ES_API es_status es_curve_read(const char* path, es_curve** out);
/* *ok = 1 when monotone within certificate slack and bounded in [0, 1 + tail]. */
ES_API es_status es_curve_check(const es_curve* c, int* ok);
ES_API es_status es_curve_sup_gap(const es_curve* a, const es_curve* b, double* gap);
ES_API void es_curve_destroy(es_curve* c);

/* Rescaled max real part of samples ellipse-ensemble replicas. */
ES_API es_status es_mc_edge(int n, double tau, const es_scaling* s, size_t samples, uint64_t seed, int threads,
                            es_mc_result** out);
ES_API size_t es_mc_count(const es_mc_result* r);
ES_API size_t es_mc_dropped(const es_mc_result* r);
/* Sorted sample values. */
ES_API const double* es_mc_sorted(const es_mc_result* r);
ES_API size_t es_mc_log_count(const es_mc_result* r);
ES_API const char* es_mc_log_line(const es_mc_result* r, size_t i);
ES_API es_status es_mc_ks_curve(const es_mc_result* r, const es_curve* c, double* d);
ES_API es_status es_mc_ks_gumbel(const es_mc_result* r, double* d);
ES_API es_status es_mc_write_edf(const es_mc_result* r, const char* path, const char* const* keys,
                                 const char* const* values, size_t meta_count);
ES_API void es_mc_destroy(es_mc_result* r);

/* Kolmogorov critical distance c(alpha)/sqrt(count). */
ES_API double es_kolmogorov_band(size_t count, double alpha);

typedef struct {
    size_t points;
    double inside_fraction;
    int cells;
    double chi2;
    double p_value;
} es_density_report;

/* dump_path (optional) receives the spectra: binary when it ends in ".bin", CSV otherwise. */
ES_API es_status es_density_check(int n, double tau, size_t spectra, uint64_t seed, int threads, int rings,
                                  int sectors, const char* dump_path, es_density_report* out);

typedef void (*es_verify_callback)(const char* name, int pass, double measured, double threshold, const char* detail,
                                   void* user);

ES_API size_t es_verify_check_count(void);
ES_API const char* es_verify_check_name(size_t i);
/* Runs the named checks (all when count is 0). *all_pass = 1 when every check passed. */
ES_API es_status es_verify(const char* const* only, size_t count, double tol_scale, es_verify_callback cb, void* user,
                           int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
