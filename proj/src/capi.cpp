#include "curvinv.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "curvinv/rng.hpp"

#include "curvinv/arclength.hpp"
#include "curvinv/conformal.hpp"
#include "curvinv/crossratio.hpp"
#include "curvinv/curve.hpp"
#include "curvinv/error.hpp"
#include "curvinv/frenet.hpp"
#include "curvinv/inversive.hpp"
#include "curvinv/rectifier.hpp"

using namespace curvinv;

struct curvinv_curve {
  Curve curve;
};
struct curvinv_arclength {
  ArcLengthMap map;
};
struct curvinv_report {
  EstimatorReport report;
};

namespace {

thread_local std::string g_last_error;

curvinv_status map_errc(errc code) {
  switch (code) {
    case errc::invalid_argument: return CURVINV_ERR_INVALID_ARGUMENT;
    case errc::unknown_curve: return CURVINV_ERR_UNKNOWN_CURVE;
    case errc::invalid_params: return CURVINV_ERR_INVALID_PARAMS;
    case errc::domain: return CURVINV_ERR_DOMAIN;
    case errc::degenerate_curve: return CURVINV_ERR_DEGENERATE_CURVE;
    case errc::degenerate_input: return CURVINV_ERR_DEGENERATE_INPUT;
    case errc::inflection_point: return CURVINV_ERR_INFLECTION_POINT;
    case errc::conformal_degeneracy: return CURVINV_ERR_CONFORMAL_DEGENERACY;
    case errc::degenerate_sphere: return CURVINV_ERR_DEGENERATE_SPHERE;
    case errc::pole: return CURVINV_ERR_POLE;
    case errc::capability: return CURVINV_ERR_CAPABILITY;
    case errc::out_of_region: return CURVINV_ERR_OUT_OF_REGION;
    case errc::numerical: return CURVINV_ERR_NUMERICAL;
    case errc::io: return CURVINV_ERR_IO;
  }
  return CURVINV_ERR_INTERNAL;
}

template <typename Fn>
curvinv_status guarded(const Fn& fn) {
  try {
    fn();
    g_last_error.clear();
    return CURVINV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CURVINV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CURVINV_ERR_INTERNAL;
  }
}

curvinv_status require(bool ok, const char* msg) {
  if (ok) return CURVINV_OK;
  g_last_error = msg;
  return CURVINV_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Vec3 vec_of(const double* p) { return {p[0], p[1], p[2]}; }

void vec_to(Vec3 v, double* out) {
  out[0] = v.x;
  out[1] = v.y;
  out[2] = v.z;
}

std::array<Vec3, 4> quad_of(const double* x) {
  return {vec_of(x), vec_of(x + 3), vec_of(x + 6), vec_of(x + 9)};
}

}  // namespace

extern "C" {

const char* curvinv_status_name(curvinv_status status) {
  switch (status) {
    case CURVINV_OK: return "ok";
    case CURVINV_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CURVINV_ERR_UNKNOWN_CURVE: return "unknown_curve";
    case CURVINV_ERR_INVALID_PARAMS: return "invalid_params";
    case CURVINV_ERR_DOMAIN: return "domain";
    case CURVINV_ERR_DEGENERATE_CURVE: return "degenerate_curve";
    case CURVINV_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case CURVINV_ERR_INFLECTION_POINT: return "inflection_point";
    case CURVINV_ERR_CONFORMAL_DEGENERACY: return "conformal_degeneracy";
    case CURVINV_ERR_DEGENERATE_SPHERE: return "degenerate_sphere";
    case CURVINV_ERR_POLE: return "pole";
    case CURVINV_ERR_CAPABILITY: return "capability";
    case CURVINV_ERR_OUT_OF_REGION: return "out_of_region";
    case CURVINV_ERR_NUMERICAL: return "numerical";
    case CURVINV_ERR_IO: return "io";
    case CURVINV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* curvinv_last_error(void) { return g_last_error.c_str(); }

const char* curvinv_version(void) { return "0.1.0"; }

void curvinv_string_free(char* s) { ::operator delete(s); }

curvinv_status curvinv_curve_catalog(const char* name, const double* params,
                                     size_t n_params, curvinv_curve** out) {
  if (curvinv_status s = require(name && out && (params || n_params == 0),
                                 "curve_catalog: null argument"))
    return s;
  return guarded([&] {
    std::vector<double> p(params, params + n_params);
    *out = new curvinv_curve{Curve::catalog(name, p)};
  });
}

curvinv_status curvinv_curve_polyline_csv(const char* path, curvinv_curve** out) {
  if (curvinv_status s = require(path && out, "curve_polyline_csv: null argument"))
    return s;
  return guarded([&] { *out = new curvinv_curve{Curve::from_polyline_csv(path)}; });
}

curvinv_status curvinv_curve_with_domain(const curvinv_curve* curve, double t_lo,
                                         double t_hi, curvinv_curve** out) {
  if (curvinv_status s = require(curve && out, "curve_with_domain: null argument"))
    return s;
  return guarded([&] { *out = new curvinv_curve{curve->curve.with_domain(t_lo, t_hi)}; });
}

void curvinv_curve_free(curvinv_curve* curve) { delete curve; }

curvinv_status curvinv_curve_eval(const curvinv_curve* curve, double t, double out[3]) {
  if (curvinv_status s = require(curve && out, "curve_eval: null argument")) return s;
  return guarded([&] { vec_to(curve->curve.eval(t), out); });
}

curvinv_status curvinv_curve_derivative(const curvinv_curve* curve, double t,
                                        int order, double out[3]) {
  if (curvinv_status s = require(curve && out, "curve_derivative: null argument"))
    return s;
  return guarded([&] { vec_to(curve->curve.derivative(t, order), out); });
}

curvinv_status curvinv_arclength_build(const curvinv_curve* curve, double tol,
                                       curvinv_arclength** out) {
  if (curvinv_status s = require(curve && out, "arclength_build: null argument"))
    return s;
  return guarded([&] { *out = new curvinv_arclength{arclength_map(curve->curve, tol)}; });
}

void curvinv_arclength_free(curvinv_arclength* map) { delete map; }

double curvinv_arclength_total(const curvinv_arclength* map) {
  return map ? map->map.total_length() : 0.0;
}

curvinv_status curvinv_point_at_s(const curvinv_curve* curve,
                                  const curvinv_arclength* map, double s,
                                  double out[3]) {
  if (curvinv_status st = require(curve && map && out, "point_at_s: null argument"))
    return st;
  return guarded([&] { vec_to(point_at_s(curve->curve, map->map, s), out); });
}

curvinv_status curvinv_frenet(const curvinv_curve* curve, const curvinv_arclength* map,
                              double s, curvinv_frenet_data* out) {
  if (curvinv_status st = require(curve && map && out, "frenet: null argument"))
    return st;
  return guarded([&] {
    FrenetState fr = frenet_state(curve->curve, map->map, s);
    out->s = fr.s;
    vec_to(fr.tangent, out->tangent);
    vec_to(fr.normal, out->normal);
    vec_to(fr.binormal, out->binormal);
    out->kappa = fr.kappa;
    out->tau = fr.tau;
    out->dkappa1 = fr.dkappa1;
    out->dkappa2 = fr.dkappa2;
    out->dkappa3 = fr.dkappa3;
    out->dtau1 = fr.dtau1;
    out->dtau2 = fr.dtau2;
  });
}

curvinv_status curvinv_conformal(const curvinv_curve* curve,
                                 const curvinv_arclength* map, double s,
                                 curvinv_conformal_data* out) {
  if (curvinv_status st = require(curve && map && out, "conformal: null argument"))
    return st;
  return guarded([&] {
    ConformalState cs = conformal_state_at(curve->curve, map->map, s);
    out->s = cs.s;
    out->nu = cs.nu;
    out->f = cs.f;
    out->dnu1 = cs.dnu1;
    out->dnu2 = cs.dnu2;
    out->Q = cs.Q;
    out->T = cs.T;
    out->P = cs.P;
    out->P_identity = cs.P_identity;
    out->P_residual = cs.P_residual;
  });
}

curvinv_status curvinv_conformal_length(const curvinv_curve* curve,
                                        const curvinv_arclength* map, double s0,
                                        double s1, double tol, double* out) {
  if (curvinv_status st = require(curve && map && out, "conformal_length: null argument"))
    return st;
  return guarded([&] { *out = conformal_length(curve->curve, map->map, s0, s1, tol); });
}

curvinv_status curvinv_omega_equidistant(const curvinv_curve* curve,
                                         const curvinv_arclength* map, double s0,
                                         double omega, int k, double* out) {
  if (curvinv_status st = require(curve && map && out, "omega_equidistant: null argument"))
    return st;
  return guarded([&] { *out = omega_equidistant(curve->curve, map->map, s0, omega, k); });
}

curvinv_status curvinv_series_inversion(const curvinv_curve* curve,
                                        const curvinv_arclength* map, double s0,
                                        double g[8]) {
  if (curvinv_status st = require(curve && map && g, "series_inversion: null argument"))
    return st;
  return guarded([&] {
    SeriesInversion si = series_inversion(curve->curve, map->map, s0);
    g[0] = si.f0;
    for (int j = 1; j <= 7; ++j) g[j] = si.g[j];
  });
}

curvinv_status curvinv_estimate(const curvinv_curve* curve,
                                const curvinv_arclength* map, double s0,
                                curvinv_estimator which, const double* steps,
                                size_t n_steps, curvinv_report** out) {
  if (curvinv_status st = require(curve && map && steps && n_steps > 0 && out,
                                  "estimate: null argument"))
    return st;
  return guarded([&] {
    std::vector<double> sched(steps, steps + n_steps);
    EstimatorReport rep;
    switch (which) {
      case CURVINV_EST_NU: rep = estimate_nu(curve->curve, map->map, s0, sched); break;
      case CURVINV_EST_P: rep = estimate_P(curve->curve, map->map, s0, sched); break;
      case CURVINV_EST_T2_BETA:
        rep = estimate_T2_beta(curve->curve, map->map, s0, sched);
        break;
      case CURVINV_EST_T2_GAMMA:
        rep = estimate_T2_gamma(curve->curve, map->map, s0, sched);
        break;
      case CURVINV_EST_Q: rep = estimate_Q(curve->curve, map->map, s0, sched); break;
      case CURVINV_EST_KAPPA:
        rep = estimate_kappa(curve->curve, map->map, s0, sched);
        break;
      case CURVINV_EST_TAU: rep = estimate_tau(curve->curve, map->map, s0, sched); break;
      default: raise(errc::invalid_argument, "estimate: unknown estimator");
    }
    *out = new curvinv_report{std::move(rep)};
  });
}

void curvinv_report_free(curvinv_report* report) { delete report; }

size_t curvinv_report_step_count(const curvinv_report* report) {
  return report ? report->report.steps.size() : 0;
}

curvinv_status curvinv_report_step(const curvinv_report* report, size_t index,
                                   double* step, double* estimate, double* abs_error,
                                   double* rel_error, int* skipped) {
  if (curvinv_status st = require(report != nullptr, "report_step: null report"))
    return st;
  if (curvinv_status st = require(index < report->report.steps.size(),
                                  "report_step: index out of range"))
    return st;
  const EstimatorStep& s = report->report.steps[index];
  if (step) *step = s.step;
  if (estimate) *estimate = s.estimate;
  if (abs_error) *abs_error = s.abs_error;
  if (rel_error) *rel_error = s.rel_error;
  if (skipped) *skipped = s.skipped ? 1 : 0;
  return CURVINV_OK;
}

double curvinv_report_extrapolated(const curvinv_report* r) {
  return r ? r->report.extrapolated : 0.0;
}
double curvinv_report_fitted_order(const curvinv_report* r) {
  return r ? r->report.fitted_order : 0.0;
}
double curvinv_report_reference(const curvinv_report* r) {
  return r ? r->report.reference : 0.0;
}
double curvinv_report_rel_error(const curvinv_report* r) {
  return r ? r->report.rel_error : 0.0;
}

curvinv_status curvinv_report_render(const curvinv_report* report, int as_json,
                                     char** out) {
  if (curvinv_status st = require(report && out, "report_render: null argument"))
    return st;
  return guarded([&] {
    *out = dup_string(as_json ? report_to_json(report->report)
                              : report_to_csv(report->report));
  });
}

curvinv_status curvinv_circle_tangent(const double p1[3], const double p2[3],
                                      const double p3[3], int at, double out[3]) {
  if (curvinv_status st = require(p1 && p2 && p3 && out, "circle_tangent: null argument"))
    return st;
  return guarded([&] {
    vec_to(circle_tangent(vec_of(p1), vec_of(p2), vec_of(p3), at), out);
  });
}

curvinv_status curvinv_cusp_angle(const double x[12], double* cos_value,
                                  double* one_minus_cos) {
  if (curvinv_status st = require(x && cos_value, "cusp_angle: null argument")) return st;
  return guarded([&] {
    AngleCosine a = cusp_angle_cos(vec_of(x), vec_of(x + 3), vec_of(x + 6), vec_of(x + 9));
    *cos_value = a.cos_value;
    if (one_minus_cos) *one_minus_cos = a.one_minus_cos;
  });
}

curvinv_status curvinv_torsion_angle(const double x[15], double* cos_value,
                                     double* one_minus_cos) {
  if (curvinv_status st = require(x && cos_value, "torsion_angle: null argument"))
    return st;
  return guarded([&] {
    AngleCosine a = torsion_angle_cos(vec_of(x), vec_of(x + 3), vec_of(x + 6),
                                      vec_of(x + 9), vec_of(x + 12));
    *cos_value = a.cos_value;
    if (one_minus_cos) *one_minus_cos = a.one_minus_cos;
  });
}

curvinv_status curvinv_sphere_angle(const double x[15], double* cos_value,
                                    double* one_minus_cos) {
  if (curvinv_status st = require(x && cos_value, "sphere_angle: null argument"))
    return st;
  return guarded([&] {
    AngleCosine a = sphere_angle_cos(vec_of(x), vec_of(x + 3), vec_of(x + 6),
                                     vec_of(x + 9), vec_of(x + 12));
    *cos_value = a.cos_value;
    if (one_minus_cos) *one_minus_cos = a.one_minus_cos;
  });
}

curvinv_status curvinv_circumsphere(const double q[12], double center[3],
                                    double* radius, double A_out[3], double* D_out) {
  if (curvinv_status st = require(q && center, "circumsphere: null argument")) return st;
  return guarded([&] {
    SphereQuad s = circumsphere(vec_of(q), vec_of(q + 3), vec_of(q + 6), vec_of(q + 9));
    vec_to(s.center, center);
    if (radius) *radius = s.radius;
    if (A_out) {
      A_out[0] = s.A1;
      A_out[1] = s.A2;
      A_out[2] = s.A3;
    }
    if (D_out) *D_out = s.D;
  });
}

curvinv_status curvinv_cross_ratio_uv(const double x[12], double* u, double* v) {
  if (curvinv_status st = require(x && u && v, "cross_ratio_uv: null argument"))
    return st;
  return guarded([&] {
    auto [uu, vv] = cross_ratio_uv(quad_of(x));
    *u = uu;
    *v = vv;
  });
}

curvinv_status curvinv_pqr_from_uv(double u, double v, double pqr[3]) {
  if (curvinv_status st = require(pqr != nullptr, "pqr_from_uv: null argument"))
    return st;
  return guarded([&] {
    PQR f = pqr_from_uv(u, v);
    pqr[0] = f.p;
    pqr[1] = f.q;
    pqr[2] = f.r;
  });
}

curvinv_status curvinv_crossratio_report(const double x[12], int as_json, char** out) {
  if (curvinv_status st = require(x && out, "crossratio_report: null argument"))
    return st;
  return guarded([&] {
    CrossRatioReport rep = pqr_from_circles(quad_of(x));
    *out = dup_string(as_json ? crossratio_report_to_json(rep)
                              : crossratio_report_to_csv(rep));
  });
}

curvinv_status curvinv_crossratio_mobius_deviation(const double x[12],
                                                   unsigned long long seed,
                                                   int n_maps, double* max_dev) {
  if (curvinv_status st = require(x && max_dev && n_maps > 0,
                                  "crossratio_mobius_deviation: bad argument"))
    return st;
  return guarded([&] {
    std::array<Vec3, 4> pts = quad_of(x);
    CrossRatioReport base = pqr_from_circles(pts);
    Vec3 center{};
    for (const Vec3& p : pts) center += 0.25 * p;
    double radius = 0.0;
    for (const Vec3& p : pts) radius = std::max(radius, distance(center, p));
    Rng rng(seed);
    double dev = 0.0;
    for (int m = 0; m < n_maps; ++m) {
      MobiusMap mb = random_mobius(rng, center, 2.0 * radius);
      std::array<Vec3, 4> img;
      for (int i = 0; i < 4; ++i) img[i] = mb.apply(pts[i]);
      CrossRatioReport rep = pqr_from_circles(img);
      dev = std::max(dev, std::abs(rep.u - base.u));
      dev = std::max(dev, std::abs(rep.v - base.v));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          dev = std::max(dev, std::abs(rep.geo[i][j] - base.geo[i][j]));
    }
    *max_dev = dev;
  });
}

curvinv_status curvinv_tetrahedron_csv(int grid_n, char** out) {
  if (curvinv_status st = require(out != nullptr, "tetrahedron_csv: null argument"))
    return st;
  return guarded([&] { *out = dup_string(surface_to_csv(tetrahedron_surface(grid_n))); });
}

}  // extern "C"
