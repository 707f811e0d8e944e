#include <doctest.h>

#include <cmath>

#include "curvinv/crossratio.hpp"
#include "curvinv/error.hpp"
#include "curvinv/inversive.hpp"
#include "curvinv/rng.hpp"
#include "oracles.hpp"

using namespace curvinv;

namespace {

std::array<Vec3, 4> random_quad(Rng& rng, double min_sep = 0.15) {
  for (;;) {
    std::array<Vec3, 4> q;
    for (Vec3& p : q) p = oracle::random_point(rng, 1.5);
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (distance(q[i], q[j]) < min_sep) { ok = false; break; }
    if (ok) return q;
  }
}

}  // namespace

TEST_CASE("cross ratio of equally spaced collinear points") {
  std::array<Vec3, 4> x = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}, Vec3{3, 0, 0}};
  double u = cross_ratio(x, 1, 4, 2, 3);
  CHECK(u == doctest::Approx(0.25));  // (x12/x13)(x43/x42) = (1/2)(1/2)
  auto [uu, vv] = cross_ratio_uv(x);
  CHECK(uu == doctest::Approx(0.25));
  CHECK(uu + vv >= 1.0 - 1e-12);
  CHECK(std::abs(uu - vv) <= 1.0 + 1e-12);
  CHECK_THROWS_AS((void)cross_ratio(x, 0, 1, 2, 3), Error);
}

TEST_CASE("square on the unit circle sits on the region boundary") {
  std::array<Vec3, 4> x = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{-1, 0, 0}, Vec3{0, -1, 0}};
  auto [u, v] = cross_ratio_uv(x);
  CHECK(u + v == doctest::Approx(1.0).epsilon(1e-12));
  CrossRatioReport rep = pqr_from_circles(x);
  CHECK(rep.boundary_concyclic);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      CHECK(std::abs(std::abs(rep.geo[i - 1][j - 1]) - 1.0) < 1e-9);
}

TEST_CASE("pqr_from_uv closed forms") {
  PQR a = pqr_from_uv(1.0, 1.0);
  CHECK(a.p == doctest::Approx(0.5));
  CHECK(a.q == doctest::Approx(0.5));
  CHECK(a.r == doctest::Approx(-0.5));
  // cubic and the angle-sum identity chi = phi + psi
  CHECK(a.p * a.p + a.q * a.q + a.r * a.r - 2 * a.p * a.q * a.r ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::acos(a.r) == doctest::Approx(std::acos(a.p) + std::acos(a.q)));

  PQR b = pqr_from_uv(0.5, 0.5);  // u+v = 1
  CHECK(b.p == doctest::Approx(1.0));
  CHECK(b.q == doctest::Approx(1.0));
  CHECK(b.r == doctest::Approx(1.0));

  // |u-v| = 1 maps to a (+-1, +-1, -1) vertex
  PQR c = pqr_from_uv(1.5, 0.5);
  CHECK(std::abs(c.p) == doctest::Approx(1.0));
  CHECK(std::abs(c.q) == doctest::Approx(1.0));
  CHECK(c.r == doctest::Approx(-1.0));

  CHECK_THROWS_AS((void)pqr_from_uv(-1.0, 1.0), Error);
  CHECK_THROWS_AS((void)pqr_from_uv(0.2, 0.3), Error);  // u+v < 1
  try {
    (void)pqr_from_uv(0.2, 0.3);
  } catch (const Error& e) {
    CHECK(e.code() == errc::out_of_region);
    CHECK(std::string(e.what()).find("u+v") != std::string::npos);
  }
  CHECK_THROWS_AS((void)pqr_from_uv(3.0, 0.5), Error);  // |u-v| > 1
}

TEST_CASE("geometric crossing cosines match the cross-ratio formulas") {
  Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    std::array<Vec3, 4> x = random_quad(rng);
    CrossRatioReport rep = pqr_from_circles(x);
    CHECK(rep.magnitude_residual <= 1e-9);
    CHECK(rep.pairing_check <= 1e-9);
    CHECK(rep.point_consistency <= 1e-10);
    CHECK(std::abs(rep.residual_cubic) <= 1e-10);
    CHECK(std::abs(rep.residual_branch) <= 1e-10);
    // region bounds hold for every quadruple of distinct points
    CHECK(rep.u > 0.0);
    CHECK(rep.v > 0.0);
    CHECK(rep.u + rep.v >= 1.0 - 1e-12);
    CHECK(std::abs(rep.u - rep.v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("thousand random quadruples: constraints at full tolerance") {
  Rng rng(67);
  int sign_matches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::array<Vec3, 4> x = random_quad(rng, 0.1);
    CrossRatioReport rep = pqr_from_circles(x);
    CHECK(std::abs(rep.residual_cubic) <= 1e-10);
    CHECK(std::abs(rep.residual_branch) <= 1e-10);
    CHECK(rep.pairing_check <= 1e-9);
    CHECK(rep.magnitude_residual <= 1e-9);
    if (rep.sign_match) ++sign_matches;
  }
  // observed: the ascending-triple convention reproduces the formula signs
  CHECK(sign_matches == 1000);
}

TEST_CASE("u, v and the crossing cosines are Mobius invariants") {
  Rng rng(71);
  std::array<Vec3, 4> x = random_quad(rng);
  CrossRatioReport base = pqr_from_circles(x);
  Vec3 center{};
  for (const Vec3& p : x) center += 0.25 * p;
  double radius = 0.0;
  for (const Vec3& p : x) radius = std::max(radius, distance(center, p));
  for (int i = 0; i < 10; ++i) {
    MobiusMap m = random_mobius(rng, center, 2.0 * radius);
    std::array<Vec3, 4> img;
    for (int k = 0; k < 4; ++k) img[k] = m.apply(x[k]);
    CrossRatioReport rep = pqr_from_circles(img);
    CHECK(std::abs(rep.u - base.u) <= 1e-10);
    CHECK(std::abs(rep.v - base.v) <= 1e-10);
    for (int a = 1; a <= 4; ++a)
      for (int b = a + 1; b <= 4; ++b)
        CHECK(std::abs(rep.geo[a - 1][b - 1] - base.geo[a - 1][b - 1]) <= 1e-9);
  }
}

TEST_CASE("region bounds come from triangle inequalities (x4 to infinity)") {
  Rng rng(73);
  for (int i = 0; i < 50; ++i) {
    Vec3 a = oracle::random_point(rng), b = oracle::random_point(rng),
         c = oracle::random_point(rng);
    if (distance(a, b) < 0.2 || distance(a, c) < 0.2 || distance(b, c) < 0.2) continue;
    std::array<Vec3, 4> x = {a, b, c, Vec3{1e7, 1.3e7, -0.7e7}};
    auto [u, v] = cross_ratio_uv(x);
    double u_limit = distance(a, b) / distance(a, c);
    double v_limit = distance(b, c) / distance(a, c);
    CHECK(u == doctest::Approx(u_limit).epsilon(1e-5));
    CHECK(v == doctest::Approx(v_limit).epsilon(1e-5));
    CHECK(u + v >= 1.0 - 1e-9);         // x12 + x23 >= x13
    CHECK(std::abs(u - v) <= 1.0 + 1e-9);  // |x12 - x23| <= x13
  }
}

TEST_CASE("coincident points are rejected") {
  std::array<Vec3, 4> x = {Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}};
  CHECK_THROWS_AS((void)pqr_from_circles(x), Error);
}

TEST_CASE("tetrahedron surface: vertices, bounds, cubic") {
  std::vector<SurfaceSample> tiny = tetrahedron_surface(2);
  CHECK(!tiny.empty());
  CHECK_THROWS_AS((void)tetrahedron_surface(1), Error);

  std::vector<SurfaceSample> s = tetrahedron_surface(50);
  bool v111 = false, v1mm = false, vm1m = false, near_excluded = false;
  for (const SurfaceSample& smp : s) {
    CHECK(std::abs(smp.p) <= 1.0);
    CHECK(std::abs(smp.q) <= 1.0);
    CHECK(std::abs(smp.r) <= 1.0);
    double resid =
        smp.p * smp.p + smp.q * smp.q + smp.r * smp.r - 2 * smp.p * smp.q * smp.r - 1;
    CHECK(std::abs(resid) <= 1e-12);
    if (!smp.on_allowed_face) continue;
    auto near = [&smp](double a, double b, double c) {
      return std::abs(smp.p - a) < 1e-9 && std::abs(smp.q - b) < 1e-9 &&
             std::abs(smp.r - c) < 1e-9;
    };
    if (near(1, 1, 1)) v111 = true;
    if (near(1, -1, -1)) v1mm = true;
    if (near(-1, 1, -1)) vm1m = true;
    if (near(-1, -1, 1)) near_excluded = true;
  }
  CHECK(v111);
  CHECK(v1mm);
  CHECK(vm1m);
  CHECK(!near_excluded);  // the face opposite (-1,-1,1) never contains it

  std::string csv = surface_to_csv(s);
  CHECK(csv.rfind("p,q,r,branch,on_allowed_face\n", 0) == 0);
}

TEST_CASE("report serializers carry the full state") {
  Rng rng(79);
  CrossRatioReport rep = pqr_from_circles(random_quad(rng));
  std::string json = crossratio_report_to_json(rep);
  CHECK(json.find("\"pairing_check\"") != std::string::npos);
  CHECK(json.find("\"cc1_cc2\"") != std::string::npos);
  std::string csv = crossratio_report_to_csv(rep);
  CHECK(csv.rfind("key,value\n", 0) == 0);
  CHECK(csv.find("residual_cubic") != std::string::npos);
}
