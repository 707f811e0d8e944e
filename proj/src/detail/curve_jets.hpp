// Arclength jets of the local curve invariants. Everything downstream of the
// curve's exact parameter derivatives is series algebra: kappa(t), tau(t) as
// jets, the t(s) reversion, and composition into s-jets whose coefficients are
// the s-derivatives the conformal formulas need (kappa''', tau'', nu'', and
// f-derivatives to order 6 for the series inversion).
#pragma once

#include "curvinv/arclength.hpp"
#include "curvinv/curve.hpp"
#include "curvinv/error.hpp"
#include "curvinv/jet.hpp"

namespace curvinv::detail {

inline constexpr double kKappaFloor = 1e-12;

struct ScalarChain {
  double s0 = 0.0;
  double t0 = 0.0;
  double speed = 0.0;
  Vec3 tangent, normal, binormal;
  Jet kappa;  // jets in (s - s0)
  Jet tau;
  bool nu_valid = false;  // false at exact conformal degeneracies (nu == 0)
  Jet nu;     // sqrt(kappa'^2 + kappa^2 tau^2), kappa' = d kappa / ds
  Jet f;      // sqrt(nu)
};

// x_order is the coordinate jet order; the nu/f jets come out two/three
// orders lower. Raises inflection_point when |x' x x''| vanishes at s.
inline ScalarChain scalar_chain(const Curve& curve, const ArcLengthMap& map,
                                double s, int x_order) {
  ScalarChain out;
  out.s0 = s;
  out.t0 = map.t_from_s(s);
  Jet3 x = curve.jets(out.t0, x_order);
  Jet3 v = x.differentiated();
  Jet3 a = v.differentiated();
  Jet3 da = a.differentiated();

  Jet speed2 = dot(v, v);
  if (speed2.value() < kRegularityFloor * kRegularityFloor)
    raise(errc::degenerate_curve, "scalar_chain: |x'| below regularity floor");
  Jet speed = sqrt(speed2);
  out.speed = speed.value();

  Jet3 cxv = cross(v, a);
  Jet cn2 = dot(cxv, cxv);
  if (!(cn2.value() > kKappaFloor * kKappaFloor * speed2.value() * speed2.value() * speed2.value()))
    raise(errc::inflection_point, "frenet: kappa below floor (inflection or straight segment)");
  Jet cn = sqrt(cn2);

  Jet kappa_t = cn / (speed2 * speed);
  Jet tau_t = dot(cxv, da) / cn2;

  // t(s) - t0 as a series in (s - s0), then push kappa, tau through it.
  Jet s_of_t = speed.integrated();
  Jet t_of_s = Jet::revert(s_of_t);
  out.kappa = Jet::compose(kappa_t.truncated(t_of_s.order()), t_of_s.truncated(kappa_t.order()));
  out.tau = Jet::compose(tau_t.truncated(t_of_s.order()), t_of_s.truncated(tau_t.order()));

  Jet kp = out.kappa.differentiated();  // d kappa / ds
  Jet kt = out.kappa.truncated(kp.order()) * out.tau.truncated(kp.order());
  Jet w = kp * kp + kt * kt;
  if (w.value() > 0.0) {
    out.nu_valid = true;
    out.nu = sqrt(w);
    out.f = sqrt(out.nu);
  }  // else: nu vanishes exactly (circles, lines); callers raise degeneracy

  Vec3 vel = v.value();
  Vec3 acc = a.value();
  out.tangent = normalized(vel);
  out.binormal = normalized(cross(vel, acc));
  out.normal = cross(out.binormal, out.tangent);
  return out;
}

}  // namespace curvinv::detail
