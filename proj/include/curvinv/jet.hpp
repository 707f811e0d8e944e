// Truncated Taylor series ("jets") at a point, with the series algebra needed
// to push exact curve derivatives through kappa/tau/nu chains: arithmetic,
// sqrt, formal differentiation/integration, composition and reversion.
//
// coeff(k) stores f^(k)(t0)/k!. Binary operations truncate to the smaller
// operand order, so a chain's final order tracks how many derivatives survive.
#pragma once

#include <array>
#include <cmath>

#include "curvinv/error.hpp"
#include "curvinv/vec3.hpp"

namespace curvinv {

class Jet {
 public:
  static constexpr int kMaxOrder = 12;

  Jet() = default;
  Jet(double value, int order) : order_(check_order(order)) { c_[0] = value; }

  // value + dt, as a series in dt.
  static Jet variable(double value, int order) {
    Jet j(value, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return k <= order_ ? c_[k] : 0.0; }
  void set_coeff(int k, double v) { c_[static_cast<std::size_t>(check_order(k))] = v; }

  // k-th derivative value: k! * coeff(k).
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * coeff(k);
  }

  Jet truncated(int order) const {
    Jet r(0.0, std::min(order, order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = c_[k];
    return r;
  }

  // Series of f' (order drops by one).
  Jet differentiated() const {
    if (order_ == 0) raise(errc::capability, "jet: derivative of order-0 jet");
    Jet r(0.0, order_ - 1);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
    return r;
  }

  // Series of the antiderivative vanishing at the expansion point.
  Jet integrated() const {
    Jet r(0.0, std::min(order_ + 1, kMaxOrder));
    for (int k = 1; k <= r.order_; ++k) r.c_[k] = c_[k - 1] / k;
    return r;
  }

  double eval(double dt) const {  // Horner
    double acc = c_[order_];
    for (int k = order_ - 1; k >= 0; --k) acc = acc * dt + c_[k];
    return acc;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(0.0, std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(0.0, std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  friend Jet operator-(const Jet& a) {
    Jet r(0.0, a.order_);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(0.0, std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      double acc = 0.0;
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }
  friend Jet operator*(double s, const Jet& a) {
    Jet r(0.0, a.order_);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = s * a.c_[k];
    return r;
  }
  friend Jet operator*(const Jet& a, double s) { return s * a; }
  friend Jet operator+(const Jet& a, double s) { Jet r = a; r.c_[0] += s; return r; }
  friend Jet operator-(const Jet& a, double s) { Jet r = a; r.c_[0] -= s; return r; }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0)
      raise(errc::numerical, "jet: division by series with zero constant term");
    Jet r(0.0, std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      double acc = a.c_[k];
      for (int i = 0; i < k; ++i) acc -= r.c_[i] * b.c_[k - i];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) {
    if (a.c_[0] <= 0.0)
      raise(errc::numerical, "jet: sqrt of series with non-positive constant term");
    Jet r(0.0, a.order_);
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
      double acc = a.c_[k];
      for (int i = 1; i < k; ++i) acc -= r.c_[i] * r.c_[k - i];
      r.c_[k] = acc / (2.0 * r.c_[0]);
    }
    return r;
  }

  // f(g) for an inner series with g(0) = 0.
  static Jet compose(const Jet& f, const Jet& g) {
    if (g.c_[0] != 0.0)
      raise(errc::invalid_argument, "jet: compose needs vanishing inner constant term");
    int n = std::min(f.order_, g.order_);
    Jet acc(f.coeff(n), n);
    Jet gn = g.truncated(n);
    for (int k = n - 1; k >= 0; --k) acc = acc * gn + f.coeff(k);
    return acc;
  }

  // Inverse series of y(x) = a1 x + a2 x^2 + ... with a1 != 0: returns x(y)
  // with x(y(x)) = x through the jet's order.
  static Jet revert(const Jet& y) {
    if (y.c_[0] != 0.0 || y.order_ < 1 || y.c_[1] == 0.0)
      raise(errc::invalid_argument, "jet: reversion needs y(0)=0, y'(0)!=0");
    int n = y.order_;
    Jet x(0.0, n);  // iterate x <- (id - (y(x) - a1*x)) / a1, one order per pass
    x.c_[1] = 1.0 / y.c_[1];
    for (int pass = 2; pass <= n; ++pass) {
      Jet yx = compose(y, x);
      Jet corr(0.0, n);
      for (int k = 2; k <= n; ++k) corr.c_[k] = yx.c_[k];
      for (int k = 2; k <= n; ++k) x.c_[k] -= corr.c_[k] / y.c_[1];
    }
    return x;
  }

 private:
  static int check_order(int order) {
    if (order < 0 || order > kMaxOrder)
      raise(errc::invalid_argument, "jet: order out of range");
    return order;
  }

  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

// Component-wise jets of a space curve around a parameter value.
struct Jet3 {
  Jet x, y, z;

  Vec3 value() const { return {x.value(), y.value(), z.value()}; }
  Jet3 differentiated() const {
    return {x.differentiated(), y.differentiated(), z.differentiated()};
  }
  Jet3 truncated(int order) const {
    return {x.truncated(order), y.truncated(order), z.truncated(order)};
  }
};

inline Jet dot(const Jet3& a, const Jet3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Jet3 cross(const Jet3& a, const Jet3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

}  // namespace curvinv
