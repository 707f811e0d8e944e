// Inscribed circular polygons and the discrete estimators that recover nu,
// P, T^2 and Q from cusp/torsion/sphere angles, with Richardson extrapolation
// and observed-order fitting against the analytic pipeline.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvinv/arclength.hpp"
#include "curvinv/conformal.hpp"
#include "curvinv/curve.hpp"
#include "curvinv/inversive.hpp"

namespace curvinv {

inline constexpr int kCenteredWindow = INT32_MIN;

// Steps below the roundoff wall of the omega^6 extraction (absolute error in
// 1-cos is ~eps_mach * omega^2 on the half-chord path) get a report warning.
inline constexpr double kOmegaWindowLo = 1e-3;
inline constexpr double kOmegaWindowHi = 2e-1;

// Polygon with circular edges inscribed in a point sequence: circle cc_j
// through (x_{j-1}, x_j, x_{j+1}); the plus side takes the arcs x_j -> x_{j+1}
// (the black polygon), minus the arcs x_{j-1} -> x_j (the red one).
struct CircularPolygon {
  enum class Side { plus, minus };
  struct Arc {
    int circle;  // index into circles
    int from;    // corner indices
    int to;
  };

  std::vector<Vec3> corners;
  Side side = Side::plus;
  std::vector<CircleTriple> circles;  // one per interior corner
  std::vector<Arc> arcs;
};

CircularPolygon inscribe(const std::vector<Vec3>& points, CircularPolygon::Side side);

// Points x(s0 + k eps) for count consecutive integers k starting at
// first_index (default: centered window, k = -(count/2), ...).
std::vector<Vec3> sample_metric(const Curve& curve, const ArcLengthMap& map,
                                double s0, double eps, int count,
                                int first_index = kCenteredWindow);

// Conformally equidistant window: x(s0 + eps(k omega)) via omega_equidistant.
std::vector<Vec3> sample_conformal(const Curve& curve, const ArcLengthMap& map,
                                   double s0, double omega, int count,
                                   int first_index = kCenteredWindow);

struct EstimatorStep {
  double step = 0.0;
  double estimate = 0.0;
  double abs_error = 0.0;  // vs reference; NaN without one
  double rel_error = 0.0;
  bool skipped = false;
  std::string note;
};

struct EstimatorReport {
  std::string quantity;
  double reference = 0.0;  // analytic value; NaN when unavailable
  std::vector<EstimatorStep> steps;
  double extrapolated = 0.0;
  double fitted_order = 0.0;  // least-squares log-log slope, monotone prefix
  double abs_error = 0.0;     // extrapolated vs reference
  double rel_error = 0.0;
  std::vector<std::string> warnings;
};

std::string report_to_csv(const EstimatorReport& report);
std::string report_to_json(const EstimatorReport& report);

// Richardson tableau for a geometric schedule, eliminating error orders
// p0, p0 + p_step, p0 + 2 p_step, ...; returns the tableau entry with the
// smallest neighbour difference (roundoff guard).
double richardson_extrapolate(const std::vector<double>& steps,
                              const std::vector<double>& values, int p0,
                              int p_step = 1);

// Observed order: least-squares slope of log|error| over the prefix of steps
// with monotonically decreasing error (excludes the roundoff tail).
double fitted_order(const std::vector<double>& steps,
                    const std::vector<double>& abs_errors);

// nu_hat = sqrt(8 (1 - cos alpha) / eps^4), metric window (-2,-1,0,+1).
EstimatorReport estimate_nu(const Curve& curve, const ArcLengthMap& map,
                            double s0, const std::vector<double>& eps_schedule);

// P_hat = (omega^4/8 - (1 - cos alpha)) / omega^6, conformal window.
EstimatorReport estimate_P(const Curve& curve, const ArcLengthMap& map,
                           double s0, const std::vector<double>& omega_schedule);

// T2_hat = 8 (1 - cos beta) / omega^6, conformal window (-2..2).
EstimatorReport estimate_T2_beta(const Curve& curve, const ArcLengthMap& map,
                                 double s0, const std::vector<double>& omega_schedule);

// T2_hat = 2 (1 - cos gamma) / (nu eps^2), metric window (-3..1); coplanar
// steps are skipped and recorded.
EstimatorReport estimate_T2_gamma(const Curve& curve, const ArcLengthMap& map,
                                  double s0, const std::vector<double>& eps_schedule);

// Q_hat = 24 P_hat - (3/4) T2_hat on the shared conformal window.
EstimatorReport estimate_Q(const Curve& curve, const ArcLengthMap& map,
                           double s0, const std::vector<double>& omega_schedule);

// kappa_hat = sqrt(2 (1 - cos alpha_bar)) / eps, order-2 metric estimator.
EstimatorReport estimate_kappa(const Curve& curve, const ArcLengthMap& map,
                               double s0, const std::vector<double>& eps_schedule);

// tau_hat = sqrt((1 - cos gamma_bar) / 2) / eps via the plane-normal angle.
EstimatorReport estimate_tau(const Curve& curve, const ArcLengthMap& map,
                             double s0, const std::vector<double>& eps_schedule);

}  // namespace curvinv
