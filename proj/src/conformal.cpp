#include "curvinv/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvinv/error.hpp"
#include "detail/curve_jets.hpp"
#include "detail/quadrature.hpp"
#include "detail/rootfind.hpp"

namespace curvinv {

ConformalState conformal_state(const FrenetState& fr, double nu_floor) {
  const double k = fr.kappa, t = fr.tau;
  const double k1 = fr.dkappa1, k2 = fr.dkappa2, k3 = fr.dkappa3;
  const double t1 = fr.dtau1, t2 = fr.dtau2;

  const double W = k1 * k1 + k * k * t * t;
  const double nu = std::sqrt(W);
  ConformalState cs;
  cs.s = fr.s;
  cs.nu = nu;
  if (!(nu > nu_floor))
    raise(errc::conformal_degeneracy,
          "conformal_state: nu below floor at s=" + std::to_string(fr.s) +
              " (circle-like point, conformal edge length vanishes)");
  cs.f = std::sqrt(nu);

  const double W1 = 2.0 * (k1 * k2 + k * k1 * t * t + k * k * t * t1);
  const double W2 = 2.0 * (k2 * k2 + k1 * k3 + k1 * k1 * t * t + k * k2 * t * t +
                           4.0 * k * k1 * t * t1 + k * k * t1 * t1 + k * k * t * t2);
  cs.dnu1 = W1 / (2.0 * nu);
  cs.dnu2 = W2 / (2.0 * nu) - W1 * W1 / (4.0 * nu * nu * nu);

  cs.Q = (4.0 * (cs.dnu2 - k * k * nu) * nu - 5.0 * cs.dnu1 * cs.dnu1) /
         (8.0 * nu * nu * nu);
  cs.T = (2.0 * k1 * k1 * t + k * k * t * t * t + k * k1 * t1 - k * k2 * t) /
         (nu * nu * std::sqrt(nu));

  // The cusp-angle omega^6 coefficient, once through its closed form and once
  // through the Q/T identity; the residual is the built-in self test.
  const double num =
      2.0 * k * t * k1 * k1 * (20.0 * k1 * t1 - 19.0 * t * k2) +
      2.0 * k * k * k * t * t * t * (5.0 * k1 * t1 - 4.0 * t * k2) +
      k1 * k1 * (28.0 * t * t * k1 * k1 - 5.0 * k2 * k2 + 4.0 * k1 * k3) +
      k * k *
          (19.0 * std::pow(t, 4) * k1 * k1 - 4.0 * std::pow(k1, 4) +
           10.0 * k1 * k1 * t1 * t1 + 2.0 * t * k1 * (2.0 * k1 * t2 - 15.0 * t1 * k2) +
           2.0 * t * t * (5.0 * k2 * k2 + 2.0 * k1 * k3)) +
      std::pow(k, 4) * t * t *
          (6.0 * std::pow(t, 4) - 8.0 * k1 * k1 - 5.0 * t1 * t1 + 4.0 * t * t2) -
      4.0 * std::pow(k, 6) * std::pow(t, 4);
  cs.P = num / (192.0 * std::pow(nu, 5));
  cs.P_identity = (cs.Q + 0.75 * cs.T * cs.T) / 24.0;
  cs.P_residual = std::abs(cs.P - cs.P_identity) / std::max(1.0, std::abs(cs.P));
  return cs;
}

ConformalState conformal_state_at(const Curve& curve, const ArcLengthMap& map,
                                  double s, double nu_floor) {
  return conformal_state(frenet_state(curve, map, s), nu_floor);
}

namespace {

// Cheap nu for quadrature: a short jet chain for analytic curves, the sampled
// Frenet path otherwise.
double nu_value(const Curve& curve, const ArcLengthMap& map, double s) {
  if (curve.derivative_source() == DerivativeSource::analytic) {
    detail::ScalarChain c = detail::scalar_chain(curve, map, s, 5);
    return c.nu_valid ? c.nu.value() : 0.0;
  }
  FrenetState fr = frenet_state(curve, map, s);
  double k1 = fr.dkappa1;
  return std::sqrt(k1 * k1 + fr.kappa * fr.kappa * fr.tau * fr.tau);
}

double f_checked(const Curve& curve, const ArcLengthMap& map, double s,
                 double nu_floor) {
  double nu = nu_value(curve, map, s);
  if (!(nu > nu_floor))
    raise(errc::conformal_degeneracy,
          "conformal_length: nu below floor at s=" + std::to_string(s));
  return std::sqrt(nu);
}

}  // namespace

double nu_at(const Curve& curve, const ArcLengthMap& map, double s, double nu_floor) {
  double nu = nu_value(curve, map, s);
  if (!(nu > nu_floor))
    raise(errc::conformal_degeneracy, "nu_at: nu below floor at s=" + std::to_string(s));
  return nu;
}

double conformal_length(const Curve& curve, const ArcLengthMap& map, double s0,
                        double s1, double tol, double nu_floor) {
  if (!(tol > 0.0)) raise(errc::invalid_argument, "conformal_length: need tol > 0");
  double L = map.total_length();
  double slack = 1e-9 * std::max(1.0, L);
  if (s0 < -slack || s0 > L + slack || s1 < -slack || s1 > L + slack)
    raise(errc::domain, "conformal_length: endpoint outside [0, total_length]");
  if (s0 == s1) return 0.0;
  auto f = [&](double s) { return f_checked(curve, map, s, nu_floor); };
  double sign = s1 >= s0 ? 1.0 : -1.0;
  double a = std::min(s0, s1), b = std::max(s0, s1);
  return sign * detail::adaptive_simpson(f, a, b, tol);
}

double omega_equidistant(const Curve& curve, const ArcLengthMap& map, double s0,
                         double omega, int k, double nu_floor) {
  if (!(omega >= 0.0)) raise(errc::invalid_argument, "omega_equidistant: need omega >= 0");
  if (k == 0 || omega == 0.0) return s0;
  const double target = k * omega;
  const double L = map.total_length();
  const double qtol = 1e-13 * std::abs(target);
  auto progress = [&](double s) {
    return conformal_length(curve, map, s0, s, qtol, nu_floor) - target;
  };

  // Bracket outward from s0, starting from the constant-density estimate.
  double f0 = f_checked(curve, map, s0, nu_floor);
  double dir = target > 0.0 ? 1.0 : -1.0;
  double step = std::abs(target) / f0;
  double lo = s0, glo = -target, hi = s0, ghi = 0.0;
  for (int it = 0;; ++it) {
    hi = s0 + dir * step;
    bool clipped = dir > 0.0 ? hi > L : hi < 0.0;
    if (clipped) hi = dir > 0.0 ? L : 0.0;
    ghi = progress(hi);
    if (dir > 0.0 ? ghi >= 0.0 : ghi <= 0.0) break;
    if (clipped)
      raise(errc::domain, "omega_equidistant: target conformal length leaves the domain");
    lo = hi;
    glo = ghi;
    if (it > 60) raise(errc::numerical, "omega_equidistant: bracketing failed");
    step *= 2.0;
  }
  if (dir < 0.0) { std::swap(lo, hi); std::swap(glo, ghi); }
  double xtol = 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return detail::brent(progress, lo, hi, glo, ghi, xtol);
}

SeriesInversion series_inversion(const Curve& curve, const ArcLengthMap& map,
                                 double s0) {
  Jet f_jet(0.0, 0);
  if (curve.derivative_source() == DerivativeSource::analytic) {
    detail::ScalarChain chain = detail::scalar_chain(curve, map, s0, 10);
    if (!chain.nu_valid || !(chain.nu.value() > kNuFloor))
      raise(errc::conformal_degeneracy, "series_inversion: nu below floor");
    f_jet = chain.f.truncated(6);
  } else {
    // Sampled f(s) pushed through a 13-node difference table.
    const int n = 13;
    double L = map.total_length();
    double h = (curve.analytic_backend() ? 0.04 : 0.2) * curve.param_scale() *
               std::max(norm(curve.derivative(map.t_from_s(s0), 1)), 1e-6);
    double lo = s0 - 6.0 * h, hi = s0 + 6.0 * h;
    if (lo < 0.0) { hi += -lo; lo = 0.0; }
    if (hi > L) { lo -= hi - L; hi = L; }
    if (lo < 0.0) raise(errc::capability, "series_inversion: curve too short for the stencil");
    std::vector<double> nodes(n), fv(n);
    for (int i = 0; i < n; ++i) {
      nodes[i] = lo + (hi - lo) * i / (n - 1);
      fv[i] = f_checked(curve, map, nodes[i], kNuFloor);
    }
    std::vector<double> w;
    fd_weights(s0, nodes, 6, w);
    f_jet = Jet(0.0, 6);
    double fact = 1.0;
    for (int j = 0; j <= 6; ++j) {
      if (j > 1) fact *= j;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += w[static_cast<std::size_t>(j) * n + i] * fv[i];
      f_jet.set_coeff(j, acc / fact);
    }
  }

  Jet omega_of_eps = f_jet.integrated();       // order 7, vanishing constant
  Jet eps_of_omega = Jet::revert(omega_of_eps);

  SeriesInversion si;
  si.s0 = s0;
  si.f0 = f_jet.value();
  double fact = 1.0;
  for (int j = 1; j <= 7; ++j) {
    fact *= j;
    si.omega_coeff[j] = omega_of_eps.coeff(j);
    si.g[j] = fact * eps_of_omega.coeff(j);
  }
  return si;
}

}  // namespace curvinv
