// Adaptive Simpson quadrature shared by the arclength and conformal modules.
#pragma once

#include <cmath>

#include "curvinv/error.hpp"

namespace curvinv::detail {

// Recursive adaptive Simpson with the standard |S_fine - S_coarse| < 15 tol
// acceptance test and Richardson correction of the accepted panel.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
  struct Impl {
    const F& f;
    int max_depth;
    double run(double a, double fa, double m, double fm, double b, double fb,
               double whole, double tol, int depth) const {
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      double delta = left + right - whole;
      if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
      return run(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
             run(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
    }
  };
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f, max_depth}.run(a, fa, m, fm, b, fb, whole, tol, 0);
}

}  // namespace curvinv::detail
