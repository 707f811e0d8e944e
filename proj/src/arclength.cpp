#include "curvinv/arclength.hpp"

#include <algorithm>
#include <cmath>

#include "curvinv/error.hpp"
#include "detail/quadrature.hpp"
#include "detail/rootfind.hpp"

namespace curvinv {

double ArcLengthMap::speed(double t) const {
  double v = norm(curve_.derivative(t, 1));
  if (v < floor_)
    raise(errc::degenerate_curve, "arclength: |x'| below regularity floor at t=" +
                                      std::to_string(t));
  return v;
}

ArcLengthMap arclength_map(const Curve& curve, double tol, double regularity_floor) {
  if (!(tol > 0.0)) raise(errc::invalid_argument, "arclength_map: need tol > 0");
  ArcLengthMap map(curve);
  map.tol_ = tol;
  map.floor_ = regularity_floor;
  Interval dom = curve.domain();
  // Fixed panels sized well below the curve's parameter scale; each panel
  // integrates adaptively to its share of the tolerance.
  int n = std::max(16, static_cast<int>(std::ceil(dom.length() / curve.param_scale() * 4.0)));
  n = std::min(n, 4096);
  map.ts_.resize(n + 1);
  map.ss_.resize(n + 1);
  map.ts_[0] = dom.lo;
  map.ss_[0] = 0.0;
  auto f = [&map](double t) { return map.speed(t); };
  for (int i = 0; i < n; ++i) {
    double a = dom.lo + dom.length() * i / n;
    double b = dom.lo + dom.length() * (i + 1) / n;
    map.ts_[i + 1] = b;
    map.ss_[i + 1] = map.ss_[i] + detail::adaptive_simpson(f, a, b, tol / n);
  }
  map.length_ = map.ss_[n];
  return map;
}

double ArcLengthMap::s_from_t(double t) const {
  Interval dom = curve_.domain();
  if (!dom.contains(t, 1e-9 * std::max(1.0, dom.length())))
    raise(errc::domain, "s_from_t: parameter outside domain");
  t = std::clamp(t, dom.lo, dom.hi);
  auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  int i = std::max(0, static_cast<int>(it - ts_.begin()) - 1);
  i = std::min(i, static_cast<int>(ts_.size()) - 2);
  auto f = [this](double x) { return speed(x); };
  return ss_[i] + detail::adaptive_simpson(f, ts_[i], t, tol_ / ts_.size());
}

double ArcLengthMap::t_from_s(double s) const {
  double slack = std::max(10.0 * tol_, 1e-12 * std::max(1.0, length_));
  if (s < -slack || s > length_ + slack)
    raise(errc::domain, "t_from_s: arclength outside [0, total_length]");
  s = std::clamp(s, 0.0, length_);
  auto it = std::upper_bound(ss_.begin(), ss_.end(), s);
  int i = std::max(0, static_cast<int>(it - ss_.begin()) - 1);
  i = std::min(i, static_cast<int>(ss_.size()) - 2);
  double lo = ts_[i], hi = ts_[i + 1];
  double glo = ss_[i] - s, ghi = ss_[i + 1] - s;
  if (glo >= 0.0) return lo;
  if (ghi <= 0.0) return hi;
  auto f = [this](double x) { return speed(x); };
  auto g = [&](double t) {
    return ss_[i] + detail::adaptive_simpson(f, ts_[i], t, 0.05 * tol_ / ts_.size()) - s;
  };
  double xtol = 1e-14 * std::max(1.0, std::abs(hi));
  return detail::brent(g, lo, hi, glo, ghi, xtol);
}

Vec3 point_at_s(const Curve& curve, const ArcLengthMap& map, double s) {
  return curve.eval(map.t_from_s(s));
}

}  // namespace curvinv
