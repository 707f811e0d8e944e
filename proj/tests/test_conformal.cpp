#include <doctest.h>

#include <cmath>

#include "curvinv/conformal.hpp"
#include "curvinv/error.hpp"
#include "curvinv/rng.hpp"
#include "oracles.hpp"

using namespace curvinv;

namespace {

struct HelixFixture {
  Curve curve = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(curve, 1e-10);
};

struct PolyFixture {
  Curve curve = Curve::catalog("trig_poly", {42.0, 3.0});
  ArcLengthMap map = arclength_map(curve, 1e-10);
};

// s values where trig_poly(42,3) is comfortably non-degenerate
double healthy_s(const Curve& c, const ArcLengthMap& m, Rng& rng) {
  double L = m.total_length();
  for (int tries = 0; tries < 200; ++tries) {
    double s = rng.next_in(0.05 * L, 0.95 * L);
    try {
      ConformalState cs = conformal_state_at(c, m, s);
      if (cs.nu > 1e-3) return s;
    } catch (const Error&) {
    }
  }
  FAIL("no healthy s found");
  return 0.0;
}

}  // namespace

TEST_CASE("helix conformal invariants in closed form") {
  // nu = kappa tau = 0.08, T = sqrt(tau/kappa), Q = -kappa/(2 tau),
  // P = (Q + 3/4 T^2)/24 = -5/192
  HelixFixture fx;
  for (double s : {0.7, 3.0, 11.0}) {
    ConformalState cs = conformal_state_at(fx.curve, fx.map, s);
    CHECK(cs.nu == doctest::Approx(0.08).epsilon(1e-9));
    CHECK(cs.T == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    CHECK(cs.Q == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(cs.P == doctest::Approx(-5.0 / 192.0).epsilon(1e-9));
    CHECK(cs.P_residual < 1e-9);
    CHECK(cs.f == doctest::Approx(std::sqrt(0.08)).epsilon(1e-9));
  }
}

TEST_CASE("planar circle is conformally degenerate") {
  Curve c = Curve::catalog("helix", {1.0, 0.0});
  ArcLengthMap map = arclength_map(c, 1e-10);
  try {
    (void)conformal_state_at(c, map, 1.0);
    FAIL("expected conformal degeneracy");
  } catch (const Error& e) {
    CHECK(e.code() == errc::conformal_degeneracy);
  }
  CHECK_THROWS_AS((void)conformal_length(c, map, 0.5, 1.5, 1e-10), Error);
}

TEST_CASE("P computed twice: closed form equals (Q + 3/4 T^2)/24") {
  PolyFixture fx;
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    double s = healthy_s(fx.curve, fx.map, rng);
    ConformalState cs = conformal_state_at(fx.curve, fx.map, s);
    CHECK(cs.P_residual <= 1e-9);
    CHECK(cs.P == doctest::Approx(cs.P_identity).epsilon(1e-9));
  }
  // and on the remaining catalog family
  Curve knot = Curve::catalog("torus_knot", {2.0, 3.0, 3.0, 1.0});
  ArcLengthMap kmap = arclength_map(knot, 1e-10);
  for (int i = 0; i < 10; ++i) {
    double s = healthy_s(knot, kmap, rng);
    ConformalState cs = conformal_state_at(knot, kmap, s);
    CHECK(cs.P_residual <= 1e-9);
  }
}

TEST_CASE("nu degeneracy floor is configurable") {
  HelixFixture fx;  // nu = 0.08 everywhere
  CHECK_THROWS_AS((void)conformal_state_at(fx.curve, fx.map, 3.0, 0.1), Error);
  CHECK_THROWS_AS((void)conformal_length(fx.curve, fx.map, 3.0, 4.0, 1e-10, 0.1), Error);
  CHECK_THROWS_AS((void)omega_equidistant(fx.curve, fx.map, 3.0, 0.1, 1, 0.1), Error);
  CHECK(nu_at(fx.curve, fx.map, 3.0, 0.05) == doctest::Approx(0.08).epsilon(1e-9));
}

TEST_CASE("conformal length on the helix: constant density sqrt(0.08)") {
  HelixFixture fx;
  double w = conformal_length(fx.curve, fx.map, 3.0, 4.0, 1e-12);
  CHECK(w == doctest::Approx(std::sqrt(0.08)).epsilon(1e-10));
  CHECK(conformal_length(fx.curve, fx.map, 3.0, 3.0, 1e-12) == 0.0);
  // signed when reversed
  CHECK(conformal_length(fx.curve, fx.map, 4.0, 3.0, 1e-12) ==
        doctest::Approx(-std::sqrt(0.08)).epsilon(1e-10));
}

TEST_CASE("omega_equidistant inverts the conformal length") {
  HelixFixture fx;
  double s0 = 3.0;
  double w = std::sqrt(0.08);  // conformal length of one unit of s
  CHECK(omega_equidistant(fx.curve, fx.map, s0, 0.1, 0) == s0);
  CHECK(omega_equidistant(fx.curve, fx.map, s0, w, 1) ==
        doctest::Approx(s0 + 1.0).epsilon(1e-9));
  double fwd = omega_equidistant(fx.curve, fx.map, s0, 0.05, 2);
  double back = omega_equidistant(fx.curve, fx.map, fwd, 0.05, -2);
  CHECK(back == doctest::Approx(s0).epsilon(1e-9));
  CHECK_THROWS_AS((void)omega_equidistant(fx.curve, fx.map, s0, 10.0, 100), Error);
}

TEST_CASE("series inversion on the helix: g1 = 1/f, higher terms vanish") {
  HelixFixture fx;
  SeriesInversion si = series_inversion(fx.curve, fx.map, 3.0);
  // f = sqrt(nu) = sqrt(0.08), so g1 = 1/f = 3.5355339
  CHECK(si.g[1] == doctest::Approx(1.0 / std::sqrt(0.08)).epsilon(1e-9));
  for (int j = 2; j <= 7; ++j) CHECK(std::abs(si.g[j]) < 1e-6);
  CHECK(si.epsilon_at(0.0) == 0.0);
}

TEST_CASE("series inversion epsilon(omega) matches the root finder to O(omega^8)") {
  PolyFixture fx;
  Rng rng(31);
  double s0 = healthy_s(fx.curve, fx.map, rng);
  SeriesInversion si = series_inversion(fx.curve, fx.map, s0);
  std::vector<double> ws, errs;
  for (double w = 0.1; w > 0.9e-3; w *= 0.5) {
    double eps_root = omega_equidistant(fx.curve, fx.map, s0, w, 1) - s0;
    double err = std::abs(si.epsilon_at(w) - eps_root);
    // an order-8 halving gains 256x; anything under 20x is the noise floor
    if (!ws.empty() && err > 0.05 * errs.back()) break;
    ws.push_back(w);
    errs.push_back(err);
  }
  REQUIRE(ws.size() >= 3);
  CHECK(oracle::loglog_slope(ws, errs) >= 7.5);
}

TEST_CASE("composing omega(eps) with eps(omega) returns the identity") {
  PolyFixture fx;
  Rng rng(37);
  double s0 = healthy_s(fx.curve, fx.map, rng);
  SeriesInversion si = series_inversion(fx.curve, fx.map, s0);
  for (double w : {0.05, 0.02}) {
    double eps = si.epsilon_at(w);
    // omega(eps) via its own Taylor data
    double acc = 0.0, p = 1.0;
    for (int j = 1; j <= 7; ++j) {
      p *= eps;
      acc += si.omega_coeff[j] * p;
    }
    CHECK(acc == doctest::Approx(w).epsilon(1e-10));
  }
}

TEST_CASE("Q, T, omega invariant under random similarities") {
  PolyFixture fx;
  Rng rng(41);
  double s0 = healthy_s(fx.curve, fx.map, rng);
  double s1 = s0 + 0.4;
  ConformalState base = conformal_state_at(fx.curve, fx.map, s0);
  double base_len = conformal_length(fx.curve, fx.map, s0, s1, 1e-12);

  for (int i = 0; i < 10; ++i) {
    double scale = rng.next_in(0.3, 2.5);
    auto M = oracle::rotation_matrix(oracle::random_point(rng) + Vec3{0.1, 0.1, 0.1},
                                     rng.next_in(0.2, 3.0), scale);
    Vec3 v = 3.0 * oracle::random_point(rng);
    Curve g = fx.curve.affine_transformed(M, v);
    ArcLengthMap gmap = arclength_map(g, 1e-10);
    // the same curve point sits at scaled arclength
    ConformalState cs = conformal_state_at(g, gmap, scale * s0);
    CHECK(cs.Q == doctest::Approx(base.Q).epsilon(1e-9));
    CHECK(cs.T == doctest::Approx(base.T).epsilon(1e-9));
    // omega is dimensionless: the conformal length of the matching arc agrees
    double len = conformal_length(g, gmap, scale * s0, scale * s1, 1e-12);
    CHECK(len == doctest::Approx(base_len).epsilon(1e-9));
  }
}

TEST_CASE("reflection flips T, leaves Q and nu") {
  PolyFixture fx;
  Rng rng(43);
  double s0 = healthy_s(fx.curve, fx.map, rng);
  ConformalState base = conformal_state_at(fx.curve, fx.map, s0);
  Curve mirrored = fx.curve.affine_transformed(oracle::mirror_z(), {});
  ArcLengthMap mmap = arclength_map(mirrored, 1e-10);
  ConformalState cs = conformal_state_at(mirrored, mmap, s0);
  CHECK(cs.nu == doctest::Approx(base.nu).epsilon(1e-9));
  CHECK(cs.Q == doctest::Approx(base.Q).epsilon(1e-9));
  CHECK(cs.T == doctest::Approx(-base.T).epsilon(1e-9));
}
