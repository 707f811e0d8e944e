#include "curvinv/frenet.hpp"

#include <algorithm>
#include <cmath>

#include "curvinv/error.hpp"
#include "detail/curve_jets.hpp"

namespace curvinv {

namespace {

struct KTauSample {
  double kappa, tau;
  Vec3 tangent, normal, binormal;
};

// Parametrization-invariant values from the first three t-derivatives.
KTauSample kappa_tau_values(const Curve& curve, double t) {
  Vec3 v = curve.derivative(t, 1);
  Vec3 a = curve.derivative(t, 2);
  Vec3 da = curve.derivative(t, 3);
  double sp2 = squared_norm(v);
  if (sp2 < kRegularityFloor * kRegularityFloor)
    raise(errc::degenerate_curve, "frenet: |x'| below regularity floor");
  Vec3 cxv = cross(v, a);
  double cn2 = squared_norm(cxv);
  if (!(cn2 > detail::kKappaFloor * detail::kKappaFloor * sp2 * sp2 * sp2))
    raise(errc::inflection_point, "frenet: kappa below floor (inflection or straight segment)");
  KTauSample out;
  out.kappa = std::sqrt(cn2) / (sp2 * std::sqrt(sp2));
  out.tau = dot(cxv, da) / cn2;
  out.tangent = normalized(v);
  out.binormal = normalized(cxv);
  out.normal = cross(out.binormal, out.tangent);
  return out;
}

FrenetState frenet_state_fd(const Curve& curve, const ArcLengthMap& map, double s) {
  double t = map.t_from_s(s);
  KTauSample at = kappa_tau_values(curve, t);
  FrenetState fr;
  fr.s = s;
  fr.kappa = at.kappa;
  fr.tau = at.tau;
  fr.tangent = at.tangent;
  fr.normal = at.normal;
  fr.binormal = at.binormal;

  // 7-point central differences of kappa(s), tau(s). The step balances the
  // noise of the sampled values (interpolated polylines are ~4 orders noisier
  // than masked-analytic evals) against stencil truncation at sharp features.
  double h = (curve.analytic_backend() ? 0.05 : 0.3) * curve.param_scale() *
             std::max(norm(curve.derivative(t, 1)), 1e-6);
  double lo = s - 3.0 * h, hi = s + 3.0 * h;
  if (lo < 0.0) { hi += -lo; lo = 0.0; }
  double L = map.total_length();
  if (hi > L) { lo -= hi - L; hi = L; }
  if (lo < 0.0)
    raise(errc::domain, "frenet: curve too short for the derivative stencil");
  std::vector<double> nodes(7);
  std::vector<double> kv(7), tv(7);
  for (int i = 0; i < 7; ++i) {
    nodes[i] = lo + (hi - lo) * i / 6.0;
    KTauSample smp = kappa_tau_values(curve, map.t_from_s(nodes[i]));
    kv[i] = smp.kappa;
    tv[i] = smp.tau;
  }
  std::vector<double> w;
  fd_weights(s, nodes, 3, w);
  auto apply = [&](const std::vector<double>& f, int order) {
    double acc = 0.0;
    for (int i = 0; i < 7; ++i) acc += w[static_cast<std::size_t>(order) * 7 + i] * f[i];
    return acc;
  };
  fr.dkappa1 = apply(kv, 1);
  fr.dkappa2 = apply(kv, 2);
  fr.dkappa3 = apply(kv, 3);
  fr.dtau1 = apply(tv, 1);
  fr.dtau2 = apply(tv, 2);
  return fr;
}

}  // namespace

FrenetState frenet_state(const Curve& curve, const ArcLengthMap& map, double s) {
  if (curve.derivative_source() == DerivativeSource::finite_difference)
    return frenet_state_fd(curve, map, s);
  detail::ScalarChain chain = detail::scalar_chain(curve, map, s, 10);
  FrenetState fr;
  fr.s = s;
  fr.tangent = chain.tangent;
  fr.normal = chain.normal;
  fr.binormal = chain.binormal;
  fr.kappa = chain.kappa.value();
  fr.tau = chain.tau.value();
  fr.dkappa1 = chain.kappa.derivative(1);
  fr.dkappa2 = chain.kappa.derivative(2);
  fr.dkappa3 = chain.kappa.derivative(3);
  fr.dtau1 = chain.tau.derivative(1);
  fr.dtau2 = chain.tau.derivative(2);
  return fr;
}

AngleCosine metric_cusp_cos(Vec3 x1, Vec3 x2, Vec3 x3) {
  double d12 = distance(x1, x2), d23 = distance(x2, x3);
  double scale = std::max({1e-300, d12, d23});
  if (d12 < 1e-14 * scale || d23 < 1e-14 * scale)
    raise(errc::degenerate_input, "metric_cusp_cos: coincident points");
  return angle_between_units((x1 - x2) / d12, (x2 - x3) / d23);
}

AngleCosine metric_plane_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5) {
  Vec3 n1 = cross(x2 - x3, x1 - x3);
  Vec3 n2 = cross(x5 - x3, x4 - x3);
  double s1 = norm(x2 - x3) * norm(x1 - x3);
  double s2 = norm(x5 - x3) * norm(x4 - x3);
  if (!(norm(n1) > 1e-14 * s1) || !(norm(n2) > 1e-14 * s2))
    raise(errc::degenerate_input, "metric_plane_cos: collinear triple");
  return angle_between_units(normalized(n1), normalized(n2));
}

}  // namespace curvinv
