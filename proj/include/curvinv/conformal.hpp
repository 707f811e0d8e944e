// Conformal invariants of space curves: nu and the conformal length density,
// conformal curvature Q, conformal torsion T, the cusp-angle coefficient P
// (computed independently through its closed form and through
// P = (Q + 3/4 T^2)/24), conformal-arclength sampling, and the series
// inversion epsilon(omega).
#pragma once

#include <array>

#include "curvinv/arclength.hpp"
#include "curvinv/curve.hpp"
#include "curvinv/frenet.hpp"

namespace curvinv {

// nu below this marks a conformal degeneracy (circles and straight lines have
// nu == 0; Q, T, P divide by powers of nu).
inline constexpr double kNuFloor = 1e-10;

struct ConformalState {
  double s = 0.0;
  double nu = 0.0;    // sqrt(kappa'^2 + kappa^2 tau^2)
  double f = 0.0;     // sqrt(nu) = d omega / d s
  double dnu1 = 0.0;  // nu'
  double dnu2 = 0.0;  // nu''
  double Q = 0.0;
  double T = 0.0;     // sign follows the curve's orientation; reversing the
                      // parameter flips tau and hence T, Q and nu are even
  double P = 0.0;           // closed form (the omega^6 cusp coefficient)
  double P_identity = 0.0;  // (Q + 3/4 T^2) / 24
  double P_residual = 0.0;  // |P - P_identity| / max(1, |P|)
};

// Pure algebra on the FrenetState fields. Raises conformal_degeneracy when
// nu <= nu_floor.
ConformalState conformal_state(const FrenetState& fr, double nu_floor = kNuFloor);

ConformalState conformal_state_at(const Curve& curve, const ArcLengthMap& map,
                                  double s, double nu_floor = kNuFloor);

// nu at arclength s (cheap path used by quadrature); raises on degeneracy.
double nu_at(const Curve& curve, const ArcLengthMap& map, double s,
             double nu_floor = kNuFloor);

// Signed integral of sqrt(nu) ds from s0 to s1, adaptive to tol. Raises
// conformal_degeneracy (with the offending location) if nu dips below floor.
double conformal_length(const Curve& curve, const ArcLengthMap& map, double s0,
                        double s1, double tol, double nu_floor = kNuFloor);

// The arclength s with conformal_length(s0, s) = k*omega, solved by bracketed
// root finding to 1e-12 relative. k may be negative; k == 0 returns s0.
double omega_equidistant(const Curve& curve, const ArcLengthMap& map, double s0,
                         double omega, int k, double nu_floor = kNuFloor);

// Taylor data of the conformal-step inversion at s0:
//   omega(eps) = a_1 eps + a_2 eps^2 + ...          (a_j = f^(j-1)(s0)/j!)
//   eps(omega) = g_1 omega + g_2 omega^2/2! + ...   (g_1 = 1/f, g_j = g'_{j-1}/f)
struct SeriesInversion {
  double s0 = 0.0;
  double f0 = 0.0;
  std::array<double, 8> g{};            // g[1]..g[7]
  std::array<double, 8> omega_coeff{};  // a_1..a_7 of omega(eps)

  double epsilon_at(double omega) const {
    double fact = 1.0, p = 1.0, acc = 0.0;
    for (int j = 1; j <= 7; ++j) {
      fact *= j;
      p *= omega;
      acc += g[j] * p / fact;
    }
    return acc;
  }
};

SeriesInversion series_inversion(const Curve& curve, const ArcLengthMap& map,
                                 double s0);

}  // namespace curvinv
