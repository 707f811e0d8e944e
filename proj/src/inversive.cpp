#include "curvinv/inversive.hpp"

#include <algorithm>
#include <cmath>

#include "curvinv/error.hpp"
#include "detail/dd.hpp"

namespace curvinv {

namespace {

void require_distinct(std::initializer_list<Vec3> pts, const char* who) {
  double scale = 1e-300;
  std::vector<Vec3> v(pts);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      scale = std::max(scale, distance(v[i], v[j]));
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (distance(v[i], v[j]) < 1e-14 * scale)
        raise(errc::degenerate_input, std::string(who) + ": coincident points");
}

}  // namespace

// ---------------------------------------------------------------------------
// Circles

CircleTriple CircleTriple::through(Vec3 a, Vec3 b, Vec3 c) {
  require_distinct({a, b, c}, "CircleTriple");
  CircleTriple t;
  t.p1 = a;
  t.p2 = b;
  t.p3 = c;
  t.x12 = distance(a, b);
  t.x13 = distance(a, c);
  t.x23 = distance(b, c);
  return t;
}

bool CircleTriple::is_line(double rel_tol) const {
  Vec3 n = cross(p2 - p1, p3 - p1);
  return norm(n) <= rel_tol * (x12 * x13);
}

Vec3 CircleTriple::center() const {
  Vec3 u = p2 - p1, v = p3 - p1;
  Vec3 w = cross(u, v);
  double w2 = squared_norm(w);
  if (is_line())
    raise(errc::degenerate_input, "CircleTriple::center: collinear triple (line)");
  // Circumcenter of the triangle (p1, p2, p3).
  Vec3 off = (squared_norm(u) * cross(v, w) + squared_norm(v) * cross(w, u)) / (2.0 * w2);
  return p1 + off;
}

double CircleTriple::radius() const { return distance(center(), p1); }

Vec3 circle_tangent(Vec3 p1, Vec3 p2, Vec3 p3, int at) {
  CircleTriple c = CircleTriple::through(p1, p2, p3);
  return circle_tangent(c, at);
}

Vec3 circle_tangent(const CircleTriple& c, int at) {
  // Appendix tangent formulas; |t| == 1 identically (the cross term completes
  // |x12|^2 in the expansion), so no normalization is applied.
  switch (at) {
    case 1:
      return (1.0 / c.x23) *
             ((c.x13 / c.x12) * (c.p2 - c.p1) + (c.x12 / c.x13) * (c.p1 - c.p3));
    case 2:
      return (1.0 / c.x13) *
             ((c.x12 / c.x23) * (c.p3 - c.p2) + (c.x23 / c.x12) * (c.p2 - c.p1));
    case 3:
      return (1.0 / c.x12) *
             ((c.x23 / c.x13) * (c.p1 - c.p3) + (c.x13 / c.x23) * (c.p3 - c.p2));
    default:
      raise(errc::invalid_argument, "circle_tangent: corner index must be 1, 2 or 3");
  }
}

// ---------------------------------------------------------------------------
// Cusp and torsion angles

AngleCosine cusp_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4) {
  require_distinct({x1, x2, x3, x4}, "cusp_angle_cos");
  double d12 = distance(x1, x2), d13 = distance(x1, x3), d14 = distance(x1, x4);
  double d23 = distance(x2, x3), d24 = distance(x2, x4), d34 = distance(x3, x4);
  double formula = (d13 * d13 * d24 * d24 + d34 * d34 * d12 * d12 -
                    d23 * d23 * d14 * d14) /
                   (2.0 * d12 * d24 * d13 * d34);
  Vec3 t1 = circle_tangent(x1, x2, x3, 3);
  Vec3 t2 = circle_tangent(x2, x3, x4, 2);
  AngleCosine out = angle_between_units(t1, t2);
  if (std::abs(formula - out.cos_value) > 1e-10)
    raise(errc::numerical, "cusp_angle_cos: distance formula and tangent dot disagree");
  out.cos_value = clamp_cosine(formula);
  return out;
}

AngleCosine torsion_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5) {
  require_distinct({x1, x2, x3, x4, x5}, "torsion_angle_cos");
  double d12 = distance(x1, x2), d13 = distance(x1, x3), d14 = distance(x1, x4),
         d15 = distance(x1, x5), d23 = distance(x2, x3), d24 = distance(x2, x4),
         d25 = distance(x2, x5), d34 = distance(x3, x4), d35 = distance(x3, x5),
         d45 = distance(x4, x5);
  double num = d13 * d13 * d24 * d24 * d35 * d35 + d15 * d15 * d23 * d23 * d34 * d34 -
               d13 * d13 * d25 * d25 * d34 * d34 - d14 * d14 * d23 * d23 * d35 * d35;
  double formula = num / (2.0 * d12 * d13 * d23 * d34 * d35 * d45);
  Vec3 t1 = circle_tangent(x1, x2, x3, 3);
  Vec3 t2 = circle_tangent(x3, x4, x5, 1);
  AngleCosine out = angle_between_units(t1, t2);
  if (std::abs(formula - out.cos_value) > 1e-10)
    raise(errc::numerical, "torsion_angle_cos: distance formula and tangent dot disagree");
  out.cos_value = clamp_cosine(formula);
  return out;
}

// ---------------------------------------------------------------------------
// Spheres

namespace {

struct SphereData {
  double A[3];
  double D;
  Vec3 n;  // A1 z1 + A2 z2 + A3 z3
};

// z1, z2, z3 relative to the footpoint; compensated determinants throughout.
SphereData sphere_data(Vec3 z1, Vec3 z2, Vec3 z3, const char* who) {
  using detail::DD;
  Vec3 z[3] = {z1, z2, z3};
  DD g[3][3], m[3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = detail::dd_dot(z[i], z[j]);
    m[i] = g[i][i];
  }
  SphereData out;
  DD D = detail::dd_det3(g);
  out.D = D.hi + D.lo;
  double scale2 = std::max({g[0][0].hi, g[1][1].hi, g[2][2].hi});
  if (!(out.D > kCoplanarFloor * scale2 * scale2 * scale2))
    raise(errc::degenerate_sphere, std::string(who) + ": coplanar quadruple (plane case)");
  for (int c = 0; c < 3; ++c) {
    DD t[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i][j] = (j == c) ? m[i] : g[i][j];
    DD A = detail::dd_det3(t);
    out.A[c] = A.hi + A.lo;
  }
  // The components of A1 z1 + A2 z2 + A3 z3 cancel mildly; accumulate exactly.
  for (int axis = 0; axis < 3; ++axis) {
    DD acc = detail::two_prod(out.A[0], z[0][axis]);
    acc = detail::dd_add(acc, detail::two_prod(out.A[1], z[1][axis]));
    acc = detail::dd_add(acc, detail::two_prod(out.A[2], z[2][axis]));
    out.n[axis] = acc.hi + acc.lo;
  }
  return out;
}

}  // namespace

SphereQuad circumsphere(Vec3 q1, Vec3 q2, Vec3 q3, Vec3 q4) {
  require_distinct({q1, q2, q3, q4}, "circumsphere");
  SphereData d = sphere_data(q1 - q4, q2 - q4, q3 - q4, "circumsphere");
  SphereQuad s;
  s.q = {q1, q2, q3, q4};
  s.A1 = d.A[0];
  s.A2 = d.A[1];
  s.A3 = d.A[2];
  s.D = d.D;
  s.center = q4 + d.n / (2.0 * d.D);
  s.radius = distance(s.center, q4);
  return s;
}

Vec3 sphere_normal(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4) {
  return sphere_data(x1 - x4, x2 - x4, x3 - x4, "sphere_normal").n;
}

AngleCosine sphere_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5) {
  require_distinct({x1, x2, x3, x4, x5}, "sphere_angle_cos");
  Vec3 n1 = sphere_data(x1 - x4, x2 - x4, x3 - x4, "sphere_angle_cos").n;
  // B2 = A2|_{x1->x5}, B3 = A3|_{x1->x5}, B5 = A1|_{x1->x5}.
  Vec3 n2 = sphere_data(x5 - x4, x2 - x4, x3 - x4, "sphere_angle_cos").n;
  return angle_between_units(normalized(n1), normalized(n2));
}

// ---------------------------------------------------------------------------
// Mobius maps

MobiusMap& MobiusMap::translate(Vec3 v) {
  steps_.push_back({Kind::translation, v, 0.0, {}});
  return *this;
}

MobiusMap& MobiusMap::rotate(Vec3 axis, double angle) {
  double n = norm(axis);
  if (!(n > 0.0)) raise(errc::invalid_argument, "MobiusMap::rotate: zero axis");
  Vec3 u = axis / n;
  double c = std::cos(angle), s = std::sin(angle), o = 1.0 - c;
  Step st{Kind::rotation, axis, angle, {}};
  st.rot = {c + u.x * u.x * o,       u.x * u.y * o - u.z * s, u.x * u.z * o + u.y * s,
            u.y * u.x * o + u.z * s, c + u.y * u.y * o,       u.y * u.z * o - u.x * s,
            u.z * u.x * o - u.y * s, u.z * u.y * o + u.x * s, c + u.z * u.z * o};
  steps_.push_back(st);
  return *this;
}

MobiusMap& MobiusMap::dilate(double factor) {
  if (!(factor > 0.0)) raise(errc::invalid_argument, "MobiusMap::dilate: factor must be > 0");
  steps_.push_back({Kind::dilation, {}, factor, {}});
  return *this;
}

MobiusMap& MobiusMap::invert(Vec3 center, double radius) {
  if (!(radius > 0.0)) raise(errc::invalid_argument, "MobiusMap::invert: radius must be > 0");
  steps_.push_back({Kind::inversion, center, radius, {}});
  return *this;
}

bool MobiusMap::has_inversion() const {
  for (const Step& s : steps_)
    if (s.kind == Kind::inversion) return true;
  return false;
}

Vec3 MobiusMap::apply(Vec3 p) const {
  for (const Step& s : steps_) {
    switch (s.kind) {
      case Kind::translation:
        p = p + s.v;
        break;
      case Kind::rotation: {
        const auto& m = s.rot;
        p = {m[0] * p.x + m[1] * p.y + m[2] * p.z,
             m[3] * p.x + m[4] * p.y + m[5] * p.z,
             m[6] * p.x + m[7] * p.y + m[8] * p.z};
        break;
      }
      case Kind::dilation:
        p = s.scalar * p;
        break;
      case Kind::inversion: {
        Vec3 d = p - s.v;
        double d2 = squared_norm(d);
        if (d2 < 1e-26 * s.scalar * s.scalar)
          raise(errc::pole, "MobiusMap: point at inversion center maps to infinity");
        p = s.v + (s.scalar * s.scalar / d2) * d;
        break;
      }
    }
  }
  return p;
}

MobiusMap MobiusMap::inverse() const {
  MobiusMap inv;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    switch (it->kind) {
      case Kind::translation: inv.translate(-it->v); break;
      case Kind::rotation: inv.rotate(it->v, -it->scalar); break;
      case Kind::dilation: inv.dilate(1.0 / it->scalar); break;
      case Kind::inversion: inv.invert(it->v, it->scalar); break;  // involution
    }
  }
  return inv;
}

MobiusMap random_mobius(Rng& rng, Vec3 keep_out_center, double keep_out_radius) {
  MobiusMap m;
  double R = std::max(keep_out_radius, 1e-3);
  auto random_unit = [&rng]() {
    // crude rejection-free spherical draw; fine for test maps
    double z = rng.next_symmetric();
    double phi = 6.283185307179586 * rng.next_unit();
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3{r * std::cos(phi), r * std::sin(phi), z};
  };
  // The inversion acts first, while the keep-out ball is still expressed in
  // the configuration's coordinates; the similarities afterwards scramble the
  // image without touching the in/out relation that fixes the sphere-normal
  // orientations.
  Vec3 c = keep_out_center + (R * rng.next_in(2.5, 6.0)) * random_unit();
  m.invert(c, R * rng.next_in(0.8, 2.5));
  m.rotate(random_unit(), rng.next_in(0.3, 2.8));
  m.dilate(rng.next_in(0.5, 2.0));
  m.translate(rng.next_in(0.2, 1.5) * R * random_unit());
  return m;
}

}  // namespace curvinv
