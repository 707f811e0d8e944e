// Elementary inversive geometry: circumcircle tangents, the distance-ratio
// cusp/torsion angles with their tangent-dot cross-checks, circumsphere
// centers and normals, the sphere crossing angle, and Mobius maps of 3-space
// for invariance testing.
#pragma once

#include <array>
#include <vector>

#include "curvinv/rng.hpp"
#include "curvinv/vec3.hpp"

namespace curvinv {

// Ordered point triple fixing a circle. Collinear triples are kept (the
// circle degenerates to a line; inversions produce those) and the tangent
// formula still applies.
struct CircleTriple {
  Vec3 p1, p2, p3;
  double x12 = 0.0, x13 = 0.0, x23 = 0.0;  // chord lengths

  static CircleTriple through(Vec3 a, Vec3 b, Vec3 c);

  bool is_line(double rel_tol = 1e-12) const;
  Vec3 center() const;   // raises degenerate_input for lines
  double radius() const; // raises degenerate_input for lines
};

// Unit tangent of the circle through the triple, at corner 1, 2 or 3,
// oriented along the traversal p1 -> p2 -> p3. Exact unit norm up to roundoff
// for any distinct triple, collinear ones included.
Vec3 circle_tangent(const CircleTriple& c, int at);
Vec3 circle_tangent(Vec3 p1, Vec3 p2, Vec3 p3, int at);

// Cusp angle at x3 between the circumcircles of (x1,x2,x3) and (x2,x3,x4):
// the distance-ratio closed form, cross-checked against the tangent dot
// product. 1 - cos = omega^4/8 + O(omega^6) on conformally equidistant
// samples.
AngleCosine cusp_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4);

// Torsion angle at x3 between the circumcircles of (x1,x2,x3) and (x3,x4,x5).
// 1 - cos = T^2 omega^6 / 8 + ... on conformally equidistant samples.
AngleCosine torsion_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5);

// Sphere through four points with the Gram-determinant data of the center
// formula x_c = q4 + (A1 z1 + A2 z2 + A3 z3) / (2D), z_j = q_j - q4.
struct SphereQuad {
  std::array<Vec3, 4> q;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0, D = 0.0;
  Vec3 center;
  double radius = 0.0;
};

// Relative (volume/scale^3)^2 below which a quadruple counts as coplanar.
inline constexpr double kCoplanarFloor = 1e-24;

SphereQuad circumsphere(Vec3 q1, Vec3 q2, Vec3 q3, Vec3 q4);

// A1 z1 + A2 z2 + A3 z3: normal of the circumsphere at x4, pointing toward
// the center (scaled by 2D > 0). Raises degenerate_sphere when coplanar.
Vec3 sphere_normal(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4);

// Angle at x4 between the circumspheres of (x1..x4) and (x2..x5), via the
// normals above with B_i = A_i|_{x1 -> x5}. 1 - cos = T^2 nu eps^2 / 2 + ...
// under metric sampling.
AngleCosine sphere_angle_cos(Vec3 x1, Vec3 x2, Vec3 x3, Vec3 x4, Vec3 x5);

// Composition of similarities and sphere inversions, applied left to right.
class MobiusMap {
 public:
  MobiusMap& translate(Vec3 v);
  MobiusMap& rotate(Vec3 axis, double angle);
  MobiusMap& dilate(double factor);          // factor > 0
  MobiusMap& invert(Vec3 center, double radius);

  Vec3 apply(Vec3 p) const;                  // raises pole at inversion centers
  MobiusMap inverse() const;
  bool has_inversion() const;
  std::size_t size() const { return steps_.size(); }

 private:
  enum class Kind { translation, rotation, dilation, inversion };
  struct Step {
    Kind kind;
    Vec3 v;              // translation vector / inversion center / rotation axis
    double scalar = 1.0; // dilation factor / inversion radius / rotation angle
    std::array<double, 9> rot{};  // row-major rotation matrix
  };
  std::vector<Step> steps_;
};

// Seeded random map containing rotation, translation, dilation and one or two
// inversions whose centers stay outside the keep-out ball. (The sphere-angle
// cosine is orientation-sensitive: an inversion center inside exactly one of
// the two circumspheres flips its sign while |cos| stays invariant, so
// invariance tests keep centers clear of the configuration.)
MobiusMap random_mobius(Rng& rng, Vec3 keep_out_center, double keep_out_radius);

}  // namespace curvinv
