// Arclength reparametrization: s(t) by adaptive quadrature of |x'|, t(s) by
// bracketed root finding on the cached segment table.
#pragma once

#include <vector>

#include "curvinv/curve.hpp"

namespace curvinv {

inline constexpr double kRegularityFloor = 1e-12;  // minimum admissible |x'|

class ArcLengthMap {
 public:
  double total_length() const { return length_; }
  double tolerance() const { return tol_; }

  double s_from_t(double t) const;
  // s in [0, total_length] (tiny slack allowed); monotone inverse of s_from_t.
  double t_from_s(double s) const;

 private:
  friend ArcLengthMap arclength_map(const Curve& curve, double tol,
                                    double regularity_floor);
  explicit ArcLengthMap(Curve curve) : curve_(std::move(curve)) {}

  double speed(double t) const;

  Curve curve_;
  std::vector<double> ts_;  // segment boundaries, strictly increasing
  std::vector<double> ss_;  // arclength prefix sums at ts_
  double length_ = 0.0;
  double tol_ = 0.0;
  double floor_ = kRegularityFloor;
};

ArcLengthMap arclength_map(const Curve& curve, double tol,
                           double regularity_floor = kRegularityFloor);

// eval at the parameter of arclength s; errors if s is outside [0, length].
Vec3 point_at_s(const Curve& curve, const ArcLengthMap& map, double s);

}  // namespace curvinv
