#ifndef ADSHARVEST_H
#define ADSHARVEST_H

/* C interface to the adsharvest library.  Every function returns an
 * adsh_status; on failure adsh_last_error_message() describes the error
 * for the calling thread.  Quantities are dimensionless, in units of the
 * switching width sigma, and per lambda~^2. */

#include <stddef.h>

#if defined(_WIN32)
#define ADSH_API __declspec(dllexport)
#else
#define ADSH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adsh_status {
    ADSH_OK = 0,
    ADSH_INVALID_ARGUMENT = 1,
    ADSH_NON_CONVERGENCE = 2,
    ADSH_DEGENERATE = 3,
    ADSH_EXTRAPOLATION_UNSTABLE = 4,
    ADSH_POLE_ON_BOUNDARY = 5,
    ADSH_IO = 6,
    ADSH_INTERNAL = 7
} adsh_status;

typedef enum adsh_trajectory { ADSH_STATIC = 0, ADSH_CIRCULAR = 1 } adsh_trajectory;
typedef enum adsh_field { ADSH_FIELD_ADS = 0, ADSH_FIELD_FLAT = 1 } adsh_field;
typedef enum adsh_contour { ADSH_CONTOUR_DEFORMED = 0, ADSH_CONTOUR_REAL_AXIS = 1 } adsh_contour;

typedef struct adsh_pair adsh_pair;
typedef struct adsh_sweep adsh_sweep;

typedef struct adsh_harvest_result {
    double p_a;
    double p_b;
    double re_x;
    double im_x;
    double concurrence;
    double err_p_a;
    double err_p_b;
    double err_x;
    double err_concurrence;
    int clamp_flag; /* 0 entangled, 1 clamped to zero, 2 marginal */
} adsh_harvest_result;

typedef struct adsh_oracle_result {
    double re;
    double im;
    double error;
    double fit_residual;
} adsh_oracle_result;

typedef struct adsh_sweep_summary {
    size_t rows_total;
    size_t rows_skipped;
    size_t rows_written;
    size_t rows_failed;
    double wall_seconds;
    int complete;
} adsh_sweep_summary;

ADSH_API const char* adsh_version(void);
ADSH_API const char* adsh_status_string(adsh_status s);
ADSH_API const char* adsh_last_error_message(void);

/* zeta: 1 Dirichlet, 0 transparent, -1 Neumann */
ADSH_API adsh_status adsh_parse_boundary(const char* name, int* zeta);

ADSH_API adsh_status adsh_proper_distance(double ell, double r1_over_ell, double r2_over_ell, double* out);
ADSH_API adsh_status adsh_radius_from_proper_distance(double ell, double d, double* r_over_ell);

/* A at proper distance d_origin from the origin, B at d_origin + separation */
ADSH_API adsh_status adsh_pair_create(adsh_trajectory kind, double ell, double gap, double d_origin,
                                      double separation, double t0, int zeta, adsh_pair** out);
ADSH_API void adsh_pair_destroy(adsh_pair* pair);
ADSH_API adsh_status adsh_pair_set_tolerance(adsh_pair* pair, double rel, double abs);
ADSH_API adsh_status adsh_pair_evaluate(const adsh_pair* pair, adsh_harvest_result* out);
/* evaluates once and combines for zeta = 1, 0, -1 in that order */
ADSH_API adsh_status adsh_pair_evaluate_all(const adsh_pair* pair, adsh_harvest_result out[3]);

ADSH_API adsh_status adsh_transition_probability(adsh_trajectory kind, double ell, double gap, double d_origin,
                                                 int zeta, double rel_tol, double* p, double* err);
ADSH_API adsh_status adsh_concurrence(double p_a, double p_b, double re_x, double im_x, double* out);

ADSH_API adsh_status adsh_flat_transition_probability(double gap, double* out);
ADSH_API adsh_status adsh_flat_matrix_element_x(double gap, double separation, double* re, double* im);
ADSH_API adsh_status adsh_flat_concurrence(double gap, double separation, double* out);
ADSH_API adsh_status adsh_perturbative_transition_probability(double gap, double ell, int zeta, double d_origin,
                                                              int order, double* out);

/* Brute-force evaluation from the Wightman function.  kind and ell are
 * ignored in flat mode except that circular trajectories are rejected. */
ADSH_API adsh_status adsh_oracle_transition_probability(adsh_field field, adsh_contour contour, adsh_trajectory kind,
                                                        double ell, double gap, double d_origin, int zeta,
                                                        adsh_oracle_result* out);
ADSH_API adsh_status adsh_oracle_matrix_element_x(adsh_field field, adsh_contour contour, adsh_trajectory kind,
                                                  double ell, double gap, double d_origin, double separation,
                                                  double t0, int zeta, adsh_oracle_result* out);

/* scenario: static-P, static-harvest, circular-harvest, flat, perturbative, oracle-compare */
ADSH_API adsh_status adsh_sweep_create(const char* scenario, adsh_sweep** out);
ADSH_API void adsh_sweep_destroy(adsh_sweep* sweep);
/* axis: ell, gap, separation, delay, origin_offset; at most two, first is the outer loop */
ADSH_API adsh_status adsh_sweep_add_axis(adsh_sweep* sweep, const char* axis, double min, double max, int count,
                                         int log_spacing);
ADSH_API adsh_status adsh_sweep_add_axis_spec(adsh_sweep* sweep, const char* axis, const char* spec);
ADSH_API adsh_status adsh_sweep_set_fixed(adsh_sweep* sweep, const char* param, double value);
/* dirichlet, transparent, neumann or all */
ADSH_API adsh_status adsh_sweep_set_zeta(adsh_sweep* sweep, const char* zeta);
ADSH_API adsh_status adsh_sweep_set_tolerance(adsh_sweep* sweep, double rel);
ADSH_API adsh_status adsh_sweep_set_perturbative_order(adsh_sweep* sweep, int order);
ADSH_API adsh_status adsh_sweep_row_count(const adsh_sweep* sweep, size_t* out);
/* format: csv or json; stop_after < 0 means no limit; jobs 0 = all cores */
ADSH_API adsh_status adsh_sweep_run(const adsh_sweep* sweep, const char* out_path, const char* format, int resume,
                                    long stop_after, int jobs, adsh_sweep_summary* summary);
/* kind: line, density or auto (from the axis count); data_path is written into the script verbatim */
ADSH_API adsh_status adsh_sweep_write_plot(const adsh_sweep* sweep, const char* data_file, const char* data_path,
                                           const char* script_path, const char* kind);

#ifdef __cplusplus
}
#endif

#endif
