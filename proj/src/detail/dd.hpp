// Compensated (double-double) arithmetic for the circumsphere Gram
// determinants. Curve-sampled quadruples are nearly coplanar: the determinant
// cancellation factor scales like (kappa^2 tau eps^3)^2, which falls below
// double precision already at step sizes around 0.02 on the helix. Exact
// TwoSum/TwoProd accumulation keeps the A_i, D and the sphere normals
// meaningful down to the input-noise limit.
#pragma once

#include <cmath>

#include "curvinv/vec3.hpp"

namespace curvinv::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD r = two_sum(s.hi, s.lo + a.lo + b.lo);
  return r;
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  DD r = two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
  return r;
}

inline DD dd_dot(Vec3 a, Vec3 b) {
  DD s = two_prod(a.x, b.x);
  s = dd_add(s, two_prod(a.y, b.y));
  s = dd_add(s, two_prod(a.z, b.z));
  return s;
}

inline DD dd_det3(const DD m[3][3]) {
  DD c0 = dd_sub(dd_mul(m[1][1], m[2][2]), dd_mul(m[1][2], m[2][1]));
  DD c1 = dd_sub(dd_mul(m[1][0], m[2][2]), dd_mul(m[1][2], m[2][0]));
  DD c2 = dd_sub(dd_mul(m[1][0], m[2][1]), dd_mul(m[1][1], m[2][0]));
  return dd_add(dd_sub(dd_mul(m[0][0], c0), dd_mul(m[0][1], c1)), dd_mul(m[0][2], c2));
}

}  // namespace curvinv::detail
