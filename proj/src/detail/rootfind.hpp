// Bracketed scalar root finding (Brent's method).
#pragma once

#include <cmath>
#include <limits>

#include "curvinv/error.hpp"

namespace curvinv::detail {

// Root of g in [lo, hi] given g(lo), g(hi) with opposite signs (either may be
// zero). Converges to |bracket| <= xtol + 4 eps |x|.
template <typename G>
double brent(const G& g, double lo, double hi, double glo, double ghi,
             double xtol, int max_iter = 200) {
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0))
    raise(errc::numerical, "brent: root not bracketed");
  double a = lo, b = hi, fa = glo, fb = ghi;
  double c = a, fc = fa, d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol;
    double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = g(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace curvinv::detail
