/* curvinv — conformal invariants of space curves.
 *
 * C API over the C++ core: opaque handles, status codes, thread-local error
 * messages. All angles are cosines; every angle also reports a
 * cancellation-free 1-cos so callers can divide by high powers of the step.
 */
#ifndef CURVINV_H
#define CURVINV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum curvinv_status {
  CURVINV_OK = 0,
  CURVINV_ERR_INVALID_ARGUMENT,
  CURVINV_ERR_UNKNOWN_CURVE,
  CURVINV_ERR_INVALID_PARAMS,
  CURVINV_ERR_DOMAIN,
  CURVINV_ERR_DEGENERATE_CURVE,
  CURVINV_ERR_DEGENERATE_INPUT,
  CURVINV_ERR_INFLECTION_POINT,
  CURVINV_ERR_CONFORMAL_DEGENERACY,
  CURVINV_ERR_DEGENERATE_SPHERE,
  CURVINV_ERR_POLE,
  CURVINV_ERR_CAPABILITY,
  CURVINV_ERR_OUT_OF_REGION,
  CURVINV_ERR_NUMERICAL,
  CURVINV_ERR_IO,
  CURVINV_ERR_INTERNAL
} curvinv_status;

const char* curvinv_status_name(curvinv_status status);

/* Message of the most recent failure on this thread ("" if none). */
const char* curvinv_last_error(void);

const char* curvinv_version(void);

/* Frees strings returned through char** out-parameters. */
void curvinv_string_free(char* s);

/* ---- curves and arclength ---- */

typedef struct curvinv_curve curvinv_curve;
typedef struct curvinv_arclength curvinv_arclength;

/* name in {"helix", "torus_knot", "trig_poly"} with params (a,b),
 * (p,q,R,r), (seed,degree) respectively. */
curvinv_status curvinv_curve_catalog(const char* name, const double* params,
                                     size_t n_params, curvinv_curve** out);

/* CSV with one point per row, three columns. */
curvinv_status curvinv_curve_polyline_csv(const char* path, curvinv_curve** out);

curvinv_status curvinv_curve_with_domain(const curvinv_curve* curve, double t_lo,
                                         double t_hi, curvinv_curve** out);

void curvinv_curve_free(curvinv_curve* curve);

curvinv_status curvinv_curve_eval(const curvinv_curve* curve, double t, double out[3]);
curvinv_status curvinv_curve_derivative(const curvinv_curve* curve, double t,
                                        int order, double out[3]);

curvinv_status curvinv_arclength_build(const curvinv_curve* curve, double tol,
                                       curvinv_arclength** out);
void curvinv_arclength_free(curvinv_arclength* map);
double curvinv_arclength_total(const curvinv_arclength* map);

curvinv_status curvinv_point_at_s(const curvinv_curve* curve,
                                  const curvinv_arclength* map, double s,
                                  double out[3]);

/* ---- local invariants ---- */

typedef struct curvinv_frenet_data {
  double s;
  double tangent[3], normal[3], binormal[3];
  double kappa, tau;
  double dkappa1, dkappa2, dkappa3;
  double dtau1, dtau2;
} curvinv_frenet_data;

curvinv_status curvinv_frenet(const curvinv_curve* curve, const curvinv_arclength* map,
                              double s, curvinv_frenet_data* out);

typedef struct curvinv_conformal_data {
  double s;
  double nu, f;
  double dnu1, dnu2;
  double Q, T;
  double P, P_identity, P_residual;
} curvinv_conformal_data;

curvinv_status curvinv_conformal(const curvinv_curve* curve,
                                 const curvinv_arclength* map, double s,
                                 curvinv_conformal_data* out);

curvinv_status curvinv_conformal_length(const curvinv_curve* curve,
                                        const curvinv_arclength* map, double s0,
                                        double s1, double tol, double* out);

curvinv_status curvinv_omega_equidistant(const curvinv_curve* curve,
                                         const curvinv_arclength* map, double s0,
                                         double omega, int k, double* out);

/* g[1]..g[7] of eps(omega) = sum g_j omega^j / j!; g[0] is set to f(s0). */
curvinv_status curvinv_series_inversion(const curvinv_curve* curve,
                                        const curvinv_arclength* map, double s0,
                                        double g[8]);

/* ---- estimators ---- */

typedef enum curvinv_estimator {
  CURVINV_EST_NU = 0,
  CURVINV_EST_P,
  CURVINV_EST_T2_BETA,
  CURVINV_EST_T2_GAMMA,
  CURVINV_EST_Q,
  CURVINV_EST_KAPPA,
  CURVINV_EST_TAU
} curvinv_estimator;

typedef struct curvinv_report curvinv_report;

/* steps must decrease strictly; geometric schedules extrapolate best. */
curvinv_status curvinv_estimate(const curvinv_curve* curve,
                                const curvinv_arclength* map, double s0,
                                curvinv_estimator which, const double* steps,
                                size_t n_steps, curvinv_report** out);

void curvinv_report_free(curvinv_report* report);
size_t curvinv_report_step_count(const curvinv_report* report);
curvinv_status curvinv_report_step(const curvinv_report* report, size_t index,
                                   double* step, double* estimate,
                                   double* abs_error, double* rel_error,
                                   int* skipped);
double curvinv_report_extrapolated(const curvinv_report* report);
double curvinv_report_fitted_order(const curvinv_report* report);
double curvinv_report_reference(const curvinv_report* report);
double curvinv_report_rel_error(const curvinv_report* report);

/* Renders CSV (as_json == 0) or JSON (as_json != 0); free with
 * curvinv_string_free. */
curvinv_status curvinv_report_render(const curvinv_report* report, int as_json,
                                     char** out);

/* ---- inversive geometry (points packed x0,y0,z0,x1,...) ---- */

curvinv_status curvinv_circle_tangent(const double p1[3], const double p2[3],
                                      const double p3[3], int at, double out[3]);

curvinv_status curvinv_cusp_angle(const double x[12], double* cos_value,
                                  double* one_minus_cos);
curvinv_status curvinv_torsion_angle(const double x[15], double* cos_value,
                                     double* one_minus_cos);
curvinv_status curvinv_sphere_angle(const double x[15], double* cos_value,
                                    double* one_minus_cos);

curvinv_status curvinv_circumsphere(const double q[12], double center[3],
                                    double* radius, double A_out[3], double* D_out);

/* ---- cross ratios ---- */

curvinv_status curvinv_cross_ratio_uv(const double x[12], double* u, double* v);
curvinv_status curvinv_pqr_from_uv(double u, double v, double pqr[3]);

curvinv_status curvinv_crossratio_report(const double x[12], int as_json, char** out);

/* Applies n_maps seeded random Mobius maps (each containing an inversion) to
 * the quadruple and reports the largest absolute change over u, v and the six
 * crossing cosines. */
curvinv_status curvinv_crossratio_mobius_deviation(const double x[12],
                                                   unsigned long long seed,
                                                   int n_maps, double* max_dev);

curvinv_status curvinv_tetrahedron_csv(int grid_n, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CURVINV_H */
