// Frenet frame, kappa/tau with s-derivatives, and the straight-edge (metric)
// angle estimators.
#pragma once

#include "curvinv/arclength.hpp"
#include "curvinv/curve.hpp"
#include "curvinv/vec3.hpp"

namespace curvinv {

struct FrenetState {
  double s = 0.0;
  Vec3 tangent, normal, binormal;  // right-handed orthonormal frame
  double kappa = 0.0;              // >= 0
  double tau = 0.0;
  double dkappa1 = 0.0, dkappa2 = 0.0, dkappa3 = 0.0;  // d^k kappa / ds^k
  double dtau1 = 0.0, dtau2 = 0.0;                     // d^k tau / ds^k
};

// Frame and invariants at arclength s. Analytic curves get exact derivative
// chains; finite-difference curves sample kappa(s), tau(s) on a 7-point
// stencil. Raises inflection_point where kappa vanishes.
FrenetState frenet_state(const Curve& curve, const ArcLengthMap& map, double s);

// cos of the angle between straight edges (x1-x2) and (x2-x3).
// 1 - cos = kappa^2 eps^2 / 2 + O(eps^4) for points at spacing eps.
AngleCosine metric_cusp_cos(Vec3 x1, Vec3 x2, Vec3 x3);

// cos of the angle between the plane normals of (x2,x3,x1) and (x5,x3,x4).
// 1 - cos = 2 tau^2 eps^2 + O(eps^4) for five consecutive samples.
AngleCosine metric_plane_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5);

}  // namespace curvinv
