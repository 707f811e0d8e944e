// Minimal fixed-size 3-vector used throughout the library.
#pragma once

#include <cmath>

namespace curvinv {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double squared_norm(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }
inline Vec3 normalized(Vec3 a) { return a / norm(a); }

inline bool all_finite(Vec3 a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

inline double clamp_cosine(double c) { return c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c); }

// Cosine of an angle together with a cancellation-free 1-cos.
// For unit vectors u, v: 1 - u.v == |u-v|^2 / 2 exactly, and the right-hand
// side stays accurate when the angle is tiny (the estimators divide 1-cos by
// powers of the step down to omega^6).
struct AngleCosine {
  double cos_value = 1.0;
  double one_minus_cos = 0.0;

  double angle() const { return std::acos(clamp_cosine(cos_value)); }
};

// Builds an AngleCosine from two unit vectors via the half-chord path.
inline AngleCosine angle_between_units(Vec3 u, Vec3 v) {
  AngleCosine a;
  a.one_minus_cos = 0.5 * squared_norm(u - v);
  a.cos_value = clamp_cosine(dot(u, v));
  return a;
}

}  // namespace curvinv
