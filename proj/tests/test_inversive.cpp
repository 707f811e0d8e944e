#include <doctest.h>

#include <cmath>

#include "curvinv/arclength.hpp"
#include "curvinv/conformal.hpp"
#include "curvinv/error.hpp"
#include "curvinv/inversive.hpp"
#include "curvinv/rectifier.hpp"
#include "oracles.hpp"

using namespace curvinv;

TEST_CASE("circle tangents: collinear triple degenerates to the line direction") {
  Vec3 t = circle_tangent({0, 0, 0}, {1, 0, 0}, {3, 0, 0}, 3);
  CHECK(norm(t - Vec3{1, 0, 0}) < 1e-12);
  CircleTriple line = CircleTriple::through({0, 0, 0}, {1, 0, 0}, {3, 0, 0});
  CHECK(line.is_line());
  CHECK_THROWS_AS((void)line.center(), Error);
}

TEST_CASE("circle tangent is orthogonal to the radius") {
  Vec3 t = circle_tangent({1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, 2);
  CHECK(std::abs(dot(t, Vec3{0, 1, 0})) < 1e-12);  // radius at (0,1,0)
  CHECK(std::abs(norm(t) - 1.0) < 1e-12);
}

TEST_CASE("circle tangents have unit norm on random triples") {
  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    Vec3 a = oracle::random_point(rng, 2.0);
    Vec3 b = oracle::random_point(rng, 2.0);
    Vec3 c = oracle::random_point(rng, 2.0);
    if (distance(a, b) < 1e-3 || distance(a, c) < 1e-3 || distance(b, c) < 1e-3) continue;
    for (int at = 1; at <= 3; ++at)
      CHECK(std::abs(norm(circle_tangent(a, b, c, at)) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS((void)circle_tangent({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, 1), Error);
}

TEST_CASE("circumcircle center and radius") {
  CircleTriple c = CircleTriple::through({1, 0, 0}, {0, 1, 0}, {-1, 0, 0});
  CHECK(norm(c.center()) < 1e-12);
  CHECK(c.radius() == doctest::Approx(1.0));
}

TEST_CASE("cusp angle: concyclic points give cos = 1") {
  AngleCosine a = cusp_angle_cos({1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0});
  CHECK(a.cos_value == doctest::Approx(1.0));
  CHECK(a.one_minus_cos < 1e-12);
}

TEST_CASE("cusp angle is invariant under an inversion") {
  Vec3 pts[4] = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  MobiusMap m;
  m.invert({2.5, 1.0, -0.7}, 1.3);
  Vec3 img[4];
  for (int i = 0; i < 4; ++i) img[i] = m.apply(pts[i]);
  AngleCosine a = cusp_angle_cos(img[0], img[1], img[2], img[3]);
  CHECK(a.cos_value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cusp angle leading term omega^4/8 on the helix") {
  Curve h = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(h, 1e-10);
  double s0 = 3.0, w = 0.05;
  std::vector<Vec3> p = sample_conformal(h, map, s0, w, 4, -2);
  AngleCosine a = cusp_angle_cos(p[0], p[1], p[2], p[3]);
  // 1 - cos = w^4/8 (1 + O(w^2)) = 7.8125e-7 within 1%
  CHECK(a.one_minus_cos == doctest::Approx(7.8125e-7).epsilon(0.01));
}

TEST_CASE("torsion angle: five concyclic points give cos = 1") {
  std::vector<Vec3> p;
  for (int k = 0; k < 5; ++k) {
    double th = 0.3 + 0.4 * k;
    p.push_back({std::cos(th), std::sin(th), 0.0});
  }
  AngleCosine b = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  CHECK(b.cos_value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("torsion angle: formula equals tangent dot on planar points") {
  std::vector<Vec3> p = {{0, 0, 0}, {1, 0.2, 0}, {2.2, -0.1, 0}, {3.0, 0.8, 0}, {4.1, 0.3, 0}};
  AngleCosine b = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  CHECK(b.cos_value >= -1.0);
  CHECK(b.cos_value <= 1.0);
  Vec3 t1 = circle_tangent(p[0], p[1], p[2], 3);
  Vec3 t2 = circle_tangent(p[2], p[3], p[4], 1);
  CHECK(b.cos_value == doctest::Approx(dot(t1, t2)).epsilon(1e-10));
}

TEST_CASE("torsion angle leading term T^2 omega^6 / 8 on the helix") {
  Curve h = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(h, 1e-10);
  double s0 = 3.0, w = 0.1;
  std::vector<Vec3> p = sample_conformal(h, map, s0, w, 5, -2);
  AngleCosine b = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  // T^2 = 0.5: 0.5 * 1e-6 / 8 = 6.25e-8 within 5%
  CHECK(b.one_minus_cos == doctest::Approx(6.25e-8).epsilon(0.05));
}

TEST_CASE("cusp and torsion distance formulas equal tangent dots at random") {
  Rng rng(211);
  int done = 0;
  while (done < 1000) {
    Vec3 p[5];
    bool ok = true;
    for (auto& v : p) v = oracle::random_point(rng, 1.5);
    for (int i = 0; i < 5 && ok; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (distance(p[i], p[j]) < 0.05) { ok = false; break; }
    if (!ok) continue;
    ++done;
    AngleCosine a = cusp_angle_cos(p[0], p[1], p[2], p[3]);
    Vec3 ta1 = circle_tangent(p[0], p[1], p[2], 3);
    Vec3 ta2 = circle_tangent(p[1], p[2], p[3], 2);
    CHECK(std::abs(a.cos_value - dot(ta1, ta2)) <= 1e-10);
    AngleCosine b = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
    Vec3 tb1 = circle_tangent(p[0], p[1], p[2], 3);
    Vec3 tb2 = circle_tangent(p[2], p[3], p[4], 1);
    CHECK(std::abs(b.cos_value - dot(tb1, tb2)) <= 1e-10);
  }
}

TEST_CASE("circumsphere: symmetric quadruple on the unit sphere") {
  SphereQuad s = circumsphere({1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  CHECK(norm(s.center) < 1e-12);
  CHECK(s.radius == doctest::Approx(1.0));
  CHECK(s.D > 0.0);
  for (const Vec3& q : s.q)
    CHECK(distance(s.center, q) == doctest::Approx(s.radius).epsilon(1e-9));
}

TEST_CASE("circumsphere: regular tetrahedron centers at the centroid") {
  Vec3 q[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  SphereQuad s = circumsphere(q[0], q[1], q[2], q[3]);
  CHECK(norm(s.center) < 1e-12);
  CHECK(s.radius == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("circumsphere: translation equivariance") {
  Vec3 d{5, 5, 5};
  SphereQuad s = circumsphere(Vec3{1, 0, 0} + d, Vec3{-1, 0, 0} + d, Vec3{0, 1, 0} + d,
                              Vec3{0, 0, 1} + d);
  CHECK(norm(s.center - d) < 1e-9);
}

TEST_CASE("circumsphere: coplanar quadruple raises degenerate_sphere") {
  try {
    (void)circumsphere({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0});
    FAIL("expected degenerate_sphere");
  } catch (const Error& e) {
    CHECK(e.code() == errc::degenerate_sphere);
  }
}

TEST_CASE("sphere normal is parallel to center - footpoint") {
  Rng rng(223);
  for (int i = 0; i < 50; ++i) {
    Vec3 q[4];
    for (auto& v : q) v = oracle::random_point(rng, 1.5);
    SphereQuad s;
    try {
      s = circumsphere(q[0], q[1], q[2], q[3]);
    } catch (const Error&) {
      continue;
    }
    Vec3 n = sphere_normal(q[0], q[1], q[2], q[3]);
    Vec3 to_center = s.center - q[3];
    CHECK(norm(cross(normalized(n), normalized(to_center))) <= 1e-10);
    CHECK(dot(n, to_center) > 0.0);  // D > 0: points toward the center
  }
}

TEST_CASE("sphere angle: five points on one sphere give |cos| = 1") {
  auto on_sphere = [](double th, double ph) {
    return Vec3{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  };
  Vec3 p[5] = {on_sphere(0.3, 0.1), on_sphere(0.9, 1.0), on_sphere(1.4, 2.2),
               on_sphere(2.0, 3.9), on_sphere(2.4, 5.3)};
  AngleCosine g = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  CHECK(std::abs(std::abs(g.cos_value) - 1.0) < 1e-9);
}

TEST_CASE("sphere angle leading term T^2 nu eps^2 / 2 on the helix") {
  Curve h = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(h, 1e-10);
  double s0 = 3.0, eps = 0.02;
  std::vector<Vec3> p = sample_metric(h, map, s0, eps, 5, -3);
  AngleCosine g = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  // (1/2) * 0.5 * 0.08 * 4e-4 = 8e-6 within 2%
  CHECK(g.one_minus_cos == doctest::Approx(8e-6).epsilon(0.02));
}

TEST_CASE("sphere angle cosine is parity even") {
  Curve h = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(h, 1e-10);
  std::vector<Vec3> p = sample_metric(h, map, 3.0, 0.05, 5, -3);
  AngleCosine g = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  for (Vec3& v : p) v.z = -v.z;  // mirror
  AngleCosine gm = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);
  CHECK(gm.cos_value == doctest::Approx(g.cos_value).epsilon(1e-12));
}

TEST_CASE("mobius basics: identity, inversion, involution, inverse map") {
  MobiusMap id;
  Vec3 p{0.3, -0.4, 0.9};
  CHECK(norm(id.apply(p) - p) == 0.0);

  MobiusMap inv;
  inv.invert({0, 0, 0}, 1.0);
  Vec3 q = inv.apply({2, 0, 0});
  CHECK(norm(q - Vec3{0.5, 0, 0}) < 1e-15);
  CHECK(norm(inv.apply(inv.apply(p)) - p) <= 1e-10);

  Rng rng(97);
  MobiusMap m = random_mobius(rng, {0, 0, 0}, 1.0);
  CHECK(m.has_inversion());
  MobiusMap mi = m.inverse();
  for (int i = 0; i < 20; ++i) {
    Vec3 x = oracle::random_point(rng, 0.9);
    CHECK(norm(mi.apply(m.apply(x)) - x) <= 1e-10 * std::max(1.0, norm(x)));
  }

  MobiusMap pole;
  pole.invert({1, 1, 1}, 2.0);
  CHECK_THROWS_AS((void)pole.apply({1, 1, 1}), Error);
}

TEST_CASE("angle invariance under random mobius maps") {
  // helix windows give well-conditioned configurations; the keep-out ball
  // covers both circumspheres so the normal orientations cannot flip
  Curve h = Curve::catalog("helix", {2.0, 1.0});
  ArcLengthMap map = arclength_map(h, 1e-10);
  Rng rng(331);
  for (int cfg = 0; cfg < 4; ++cfg) {
    double s0 = 2.0 + 2.1 * cfg;
    double eps = 0.1 + 0.07 * cfg;
    std::vector<Vec3> p = sample_metric(h, map, s0, eps, 5, -3);
    AngleCosine alpha = cusp_angle_cos(p[0], p[1], p[2], p[3]);
    AngleCosine beta = torsion_angle_cos(p[0], p[1], p[2], p[3], p[4]);
    AngleCosine gamma = sphere_angle_cos(p[0], p[1], p[2], p[3], p[4]);

    SphereQuad s1 = circumsphere(p[0], p[1], p[2], p[3]);
    SphereQuad s2 = circumsphere(p[4], p[1], p[2], p[3]);
    Vec3 keep_center = 0.5 * (s1.center + s2.center);
    double keep_radius = std::max(distance(keep_center, s1.center) + s1.radius,
                                  distance(keep_center, s2.center) + s2.radius);

    for (int trial = 0; trial < 10; ++trial) {
      MobiusMap m = random_mobius(rng, keep_center, 1.2 * keep_radius);
      std::vector<Vec3> img(5);
      for (int i = 0; i < 5; ++i) img[i] = m.apply(p[i]);
      CHECK(std::abs(cusp_angle_cos(img[0], img[1], img[2], img[3]).cos_value -
                     alpha.cos_value) <= 1e-9);
      CHECK(std::abs(torsion_angle_cos(img[0], img[1], img[2], img[3], img[4]).cos_value -
                     beta.cos_value) <= 1e-9);
      CHECK(std::abs(sphere_angle_cos(img[0], img[1], img[2], img[3], img[4]).cos_value -
                     gamma.cos_value) <= 1e-9);
    }
  }
}

TEST_CASE("crossing angle of two circles agrees at either common point") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    Vec3 a = oracle::random_point(rng), b = oracle::random_point(rng);
    Vec3 c1 = oracle::random_point(rng), c2 = oracle::random_point(rng);
    if (distance(a, b) < 0.1 || distance(c1, a) < 0.1 || distance(c1, b) < 0.1 ||
        distance(c2, a) < 0.1 || distance(c2, b) < 0.1 || distance(c1, c2) < 0.1)
      continue;
    double at_a = dot(circle_tangent(a, c1, b, 1), circle_tangent(a, c2, b, 1));
    double at_b = dot(circle_tangent(a, c1, b, 3), circle_tangent(a, c2, b, 3));
    CHECK(std::abs(at_a - at_b) <= 1e-10);
  }
}
