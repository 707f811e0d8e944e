#include "curvinv/rectifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "curvinv/error.hpp"
#include "curvinv/frenet.hpp"

namespace curvinv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int resolve_first_index(int count, int first_index) {
  if (count < 1) raise(errc::invalid_argument, "sample window: count must be >= 1");
  return first_index == kCenteredWindow ? -(count / 2) : first_index;
}

}  // namespace

CircularPolygon inscribe(const std::vector<Vec3>& points, CircularPolygon::Side side) {
  if (points.size() < 3)
    raise(errc::invalid_argument, "inscribe: need at least 3 points");
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double scale = std::max(1e-300, std::max(norm(points[i]), norm(points[i + 1])));
    if (distance(points[i], points[i + 1]) < 1e-14 * scale)
      raise(errc::degenerate_input, "inscribe: coincident consecutive corners");
  }
  CircularPolygon poly;
  poly.corners = points;
  poly.side = side;
  int n = static_cast<int>(points.size());
  for (int j = 1; j + 1 < n; ++j) {
    poly.circles.push_back(CircleTriple::through(points[j - 1], points[j], points[j + 1]));
    int c = static_cast<int>(poly.circles.size()) - 1;
    if (side == CircularPolygon::Side::plus)
      poly.arcs.push_back({c, j, j + 1});
    else
      poly.arcs.push_back({c, j - 1, j});
  }
  return poly;
}

std::vector<Vec3> sample_metric(const Curve& curve, const ArcLengthMap& map,
                                double s0, double eps, int count, int first_index) {
  if (!(eps > 0.0)) raise(errc::invalid_argument, "sample_metric: need eps > 0");
  int k0 = resolve_first_index(count, first_index);
  std::vector<Vec3> pts;
  pts.reserve(count);
  for (int k = k0; k < k0 + count; ++k)
    pts.push_back(point_at_s(curve, map, s0 + k * eps));
  return pts;
}

std::vector<Vec3> sample_conformal(const Curve& curve, const ArcLengthMap& map,
                                   double s0, double omega, int count, int first_index) {
  if (!(omega > 0.0)) raise(errc::invalid_argument, "sample_conformal: need omega > 0");
  int k0 = resolve_first_index(count, first_index);
  std::vector<Vec3> pts;
  pts.reserve(count);
  for (int k = k0; k < k0 + count; ++k)
    pts.push_back(curve.eval(map.t_from_s(omega_equidistant(curve, map, s0, omega, k))));
  return pts;
}

// ---------------------------------------------------------------------------
// Extrapolation and order fitting

double richardson_extrapolate(const std::vector<double>& steps,
                              const std::vector<double>& values, int p0, int p_step) {
  std::size_t n = steps.size();
  if (n == 0 || values.size() != n)
    raise(errc::invalid_argument, "richardson: empty or mismatched schedule");
  if (n == 1) return values[0];
  double ratio = steps[0] / steps[1];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(steps[i] > steps[i + 1]))
      raise(errc::invalid_argument, "richardson: steps must decrease strictly");
    if (std::abs(steps[i] / steps[i + 1] - ratio) > 1e-9 * ratio)
      return values[n - 1];  // non-geometric schedule: best raw value
  }
  std::vector<std::vector<double>> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = {values[i]};
  for (std::size_t j = 1; j < n; ++j) {
    double denom = std::pow(ratio, p0 + static_cast<int>(j - 1) * p_step) - 1.0;
    for (std::size_t i = j; i < n; ++i)
      t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / denom);
  }
  // Pick the entry with the most self-consistent neighbourhood: candidates
  // are the finest raw value (proxy: the last raw difference) and the deeper
  // columns of the last two rows. Protects against roundoff- or
  // pre-asymptotic-contaminated tails drifting the deep columns.
  double best = t[n - 1][0];
  double best_diff = std::abs(t[n - 1][0] - t[n - 2][0]);
  for (std::size_t i = n >= 3 ? n - 2 : n - 1; i < n; ++i) {
    for (std::size_t j = 1; j <= i; ++j) {
      double diff = std::abs(t[i][j] - t[i][j - 1]);
      if (diff <= best_diff) {
        best_diff = diff;
        best = t[i][j];
      }
    }
  }
  return best;
}

double fitted_order(const std::vector<double>& steps,
                    const std::vector<double>& abs_errors) {
  // longest run of monotonically decreasing error: drops both a
  // pre-asymptotic head and the roundoff tail
  std::size_t n = std::min(steps.size(), abs_errors.size());
  std::size_t best_begin = 0, best_len = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!std::isfinite(abs_errors[i]) || abs_errors[i] <= 1e-300) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && std::isfinite(abs_errors[j]) && abs_errors[j] > 1e-300 &&
           abs_errors[j] < abs_errors[j - 1])
      ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_begin = i;
    }
    i = j;
  }
  std::vector<double> lx, ly;
  for (std::size_t k = best_begin; k < best_begin + best_len; ++k) {
    lx.push_back(std::log(steps[k]));
    ly.push_back(std::log(abs_errors[k]));
  }
  if (lx.size() < 2) return kNaN;
  double cnt = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Estimator driver

namespace {

template <typename StepFn>
EstimatorReport run_schedule(std::string quantity, double reference,
                             const std::vector<double>& schedule, int p0, int p_step,
                             double window_lo, double window_hi, const StepFn& fn) {
  if (schedule.empty())
    raise(errc::invalid_argument, quantity + ": empty step schedule");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i + 1]))
      raise(errc::invalid_argument, quantity + ": schedule must decrease strictly");

  EstimatorReport rep;
  rep.quantity = std::move(quantity);
  rep.reference = reference;
  bool outside_window = false;
  for (double h : schedule) {
    EstimatorStep st;
    st.step = h;
    if (h < window_lo || h > window_hi) outside_window = true;
    try {
      st.estimate = fn(h);
      st.abs_error = std::isfinite(reference) ? std::abs(st.estimate - reference) : kNaN;
      st.rel_error = reference == 0.0 ? st.abs_error : st.abs_error / std::abs(reference);
      if (!std::isfinite(reference)) st.rel_error = kNaN;
    } catch (const Error& e) {
      st.skipped = true;
      st.estimate = st.abs_error = st.rel_error = kNaN;
      st.note = std::string(errc_name(e.code())) + ": " + e.what();
    }
    rep.steps.push_back(std::move(st));
  }
  if (outside_window)
    rep.warnings.push_back("schedule leaves the stability window [" + fmt17(window_lo) +
                           ", " + fmt17(window_hi) + "]");

  // The longest contiguous non-skipped run feeds extrapolation; ties go to
  // the run with the smaller steps.
  std::size_t best_begin = 0, best_len = 0;
  for (std::size_t i = 0; i < rep.steps.size();) {
    if (rep.steps[i].skipped) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < rep.steps.size() && !rep.steps[j].skipped) ++j;
    if (j - i >= best_len) {
      best_len = j - i;
      best_begin = i;
    }
    i = j;
  }
  std::vector<double> hs, vs, errs;
  for (std::size_t i = best_begin; i < best_begin + best_len; ++i) {
    hs.push_back(rep.steps[i].step);
    vs.push_back(rep.steps[i].estimate);
  }
  if (hs.empty()) {
    rep.extrapolated = rep.fitted_order = rep.abs_error = rep.rel_error = kNaN;
    rep.warnings.push_back("all usable steps failed; no extrapolation");
    return rep;
  }
  if (hs.size() < rep.steps.size())
    rep.warnings.push_back("skipped steps excluded from extrapolation");
  // Trim a pre-asymptotic head: successive differences of a convergent
  // power-law sequence shrink by ~2^p per halving, so keep the longest
  // suffix with non-increasing |v_{k+1} - v_k|.
  if (hs.size() >= 3) {
    std::size_t start = hs.size() - 2;
    while (start > 0 && std::abs(vs[start] - vs[start - 1]) >=
                            std::abs(vs[start + 1] - vs[start]))
      --start;
    if (start + 3 <= hs.size() && start > 0) {
      hs.erase(hs.begin(), hs.begin() + start);
      vs.erase(vs.begin(), vs.begin() + start);
      rep.warnings.push_back("pre-asymptotic steps excluded from extrapolation");
    }
  }
  rep.extrapolated = richardson_extrapolate(hs, vs, p0, p_step);

  double order_ref = std::isfinite(reference) ? reference : rep.extrapolated;
  for (std::size_t i = 0; i < hs.size(); ++i)
    errs.push_back(std::abs(vs[i] - order_ref));
  rep.fitted_order = fitted_order(hs, errs);
  std::size_t monotone = 1;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    if (errs[i] < errs[i - 1]) ++monotone;
    else break;
  }
  if (monotone < errs.size())
    rep.warnings.push_back("non-monotone error decay past step " + fmt17(hs[monotone - 1]) +
                           " (roundoff dominance)");

  rep.abs_error = std::isfinite(reference) ? std::abs(rep.extrapolated - reference) : kNaN;
  rep.rel_error = reference == 0.0 ? rep.abs_error : rep.abs_error / std::abs(reference);
  if (!std::isfinite(reference)) rep.rel_error = kNaN;
  return rep;
}

}  // namespace

EstimatorReport estimate_nu(const Curve& curve, const ArcLengthMap& map, double s0,
                            const std::vector<double>& eps_schedule) {
  double reference = conformal_state_at(curve, map, s0).nu;
  return run_schedule("nu", reference, eps_schedule, 1, 1, 0.0,
                      std::numeric_limits<double>::infinity(), [&](double eps) {
        std::vector<Vec3> p = sample_metric(curve, map, s0, eps, 4, -2);
        AngleCosine a = cusp_angle_cos(p[0], p[1], p[2], p[3]);
        return std::sqrt(8.0 * a.one_minus_cos / std::pow(eps, 4));
      });
}

EstimatorReport estimate_P(const Curve& curve, const ArcLengthMap& map, double s0,
                           const std::vector<double>& omega_schedule) {
  double reference = conformal_state_at(curve, map, s0).P;
  return run_schedule("P", reference, omega_schedule, 1, 1, kOmegaWindowLo,
                      kOmegaWindowHi, [&](double w) {
        std::vector<Vec3> p = sample_conformal(curve, map, s0, w, 4, -2);
        AngleCosine a = cusp_angle_cos(p[0], p[1], p[2], p[3]);
        return (std::pow(w, 4) / 8.0 - a.one_minus_cos) / std::pow(w, 6);
      });
}

EstimatorReport estimate_T2_beta(const Curve& curve, const ArcLengthMap& map, double s0,
                                 const std::vector<double>& omega_schedule) {
  ConformalState cs = conformal_state_at(curve, map, s0);
  return run_schedule("T2_beta", cs.T * cs.T, omega_schedule, 1, 1, kOmegaWindowLo,
                      kOmegaWindowHi, [&](double w) {
        std::vector<Vec3> p = sample_conformal(curve, map, s0, w, 5, -2);
        AngleCosine a = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
        return 8.0 * a.one_minus_cos / std::pow(w, 6);
      });
}

EstimatorReport estimate_T2_gamma(const Curve& curve, const ArcLengthMap& map, double s0,
                                  const std::vector<double>& eps_schedule) {
  ConformalState cs = conformal_state_at(curve, map, s0);
  double nu = cs.nu;
  return run_schedule("T2_gamma", cs.T * cs.T, eps_schedule, 1, 1, 0.0,
                      std::numeric_limits<double>::infinity(), [&](double eps) {
        std::vector<Vec3> p = sample_metric(curve, map, s0, eps, 5, -3);
        AngleCosine a = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);
        return 2.0 * a.one_minus_cos / (nu * eps * eps);
      });
}

EstimatorReport estimate_Q(const Curve& curve, const ArcLengthMap& map, double s0,
                           const std::vector<double>& omega_schedule) {
  ConformalState cs = conformal_state_at(curve, map, s0);
  return run_schedule("Q", cs.Q, omega_schedule, 1, 1, kOmegaWindowLo, kOmegaWindowHi,
                      [&](double w) {
        std::vector<Vec3> p = sample_conformal(curve, map, s0, w, 5, -2);
        AngleCosine alpha = cusp_angle_cos(p[0], p[1], p[2], p[3]);
        AngleCosine beta = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
        double P_hat = (std::pow(w, 4) / 8.0 - alpha.one_minus_cos) / std::pow(w, 6);
        double T2_hat = 8.0 * beta.one_minus_cos / std::pow(w, 6);
        return 24.0 * P_hat - 0.75 * T2_hat;
      });
}

EstimatorReport estimate_kappa(const Curve& curve, const ArcLengthMap& map, double s0,
                               const std::vector<double>& eps_schedule) {
  double reference = frenet_state(curve, map, s0).kappa;
  return run_schedule("kappa", reference, eps_schedule, 2, 2, 0.0,
                      std::numeric_limits<double>::infinity(), [&](double eps) {
        std::vector<Vec3> p = sample_metric(curve, map, s0, eps, 3, -1);
        AngleCosine a = metric_cusp_cos(p[0], p[1], p[2]);
        return std::sqrt(2.0 * a.one_minus_cos) / eps;
      });
}

EstimatorReport estimate_tau(const Curve& curve, const ArcLengthMap& map, double s0,
                             const std::vector<double>& eps_schedule) {
  double reference = std::abs(frenet_state(curve, map, s0).tau);
  return run_schedule("tau", reference, eps_schedule, 2, 2, 0.0,
                      std::numeric_limits<double>::infinity(), [&](double eps) {
        std::vector<Vec3> p = sample_metric(curve, map, s0, eps, 5, -2);
        AngleCosine a = metric_plane_cos(p[0], p[1], p[2], p[3], p[4]);
        return std::sqrt(a.one_minus_cos / 2.0) / eps;
      });
}

// ---------------------------------------------------------------------------
// Serialization

std::string report_to_csv(const EstimatorReport& rep) {
  std::string out = "step,estimate,abs_error,rel_error\n";
  for (const EstimatorStep& st : rep.steps) {
    if (st.skipped) {
      out += "# skipped step " + fmt17(st.step) + ": " + st.note + "\n";
      continue;
    }
    out += fmt17(st.step) + "," + fmt17(st.estimate) + "," + fmt17(st.abs_error) +
           "," + fmt17(st.rel_error) + "\n";
  }
  out += "extrapolated," + fmt17(rep.extrapolated) + "\n";
  out += "fitted_order," + fmt17(rep.fitted_order) + "\n";
  out += "reference," + fmt17(rep.reference) + "\n";
  out += "rel_error," + fmt17(rep.rel_error) + "\n";
  for (const std::string& w : rep.warnings) out += "# warning: " + w + "\n";
  return out;
}

std::string report_to_json(const EstimatorReport& rep) {
  nlohmann::json j;
  j["quantity"] = rep.quantity;
  j["reference"] = rep.reference;
  j["extrapolated"] = rep.extrapolated;
  j["fitted_order"] = rep.fitted_order;
  j["abs_error"] = rep.abs_error;
  j["rel_error"] = rep.rel_error;
  j["warnings"] = rep.warnings;
  j["steps"] = nlohmann::json::array();
  for (const EstimatorStep& st : rep.steps) {
    nlohmann::json js;
    js["step"] = st.step;
    js["estimate"] = st.estimate;
    js["abs_error"] = st.abs_error;
    js["rel_error"] = st.rel_error;
    js["skipped"] = st.skipped;
    if (!st.note.empty()) js["note"] = st.note;
    j["steps"].push_back(js);
  }
  return j.dump(2) + "\n";
}

}  // namespace curvinv
