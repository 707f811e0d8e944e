// Parametric space curves with derivative access: the analytic catalog
// (helix, torus_knot, trig_poly), trigonometric-series curves, sampled
// polylines, and finite-difference derivative fallbacks.
#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "curvinv/jet.hpp"
#include "curvinv/vec3.hpp"

namespace curvinv {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const {
    return t >= lo - slack && t <= hi + slack;
  }
};

enum class DerivativeSource { analytic, finite_difference };

// One coordinate as offset + slope*t + sum_k (a_k cos kt + b_k sin kt).
// Closed under differentiation, so catalog curves have exact derivatives of
// every order the jet machinery can hold.
struct TrigSeries {
  double offset = 0.0;
  double slope = 0.0;
  std::vector<double> cos_coeff;  // index k-1 holds frequency k
  std::vector<double> sin_coeff;

  void add_cos(int freq, double c);  // negative/zero frequencies folded in
  void add_sin(int freq, double c);
  double eval(double t) const;
  double derivative(double t, int order) const;
};

class Curve {
 public:
  // name in {helix(a,b), torus_knot(p,q,R,r), trig_poly(seed,degree)}.
  static Curve catalog(const std::string& name, const std::vector<double>& params);

  static Curve from_trig_series(TrigSeries x, TrigSeries y, TrigSeries z,
                                Interval domain, double param_scale = 1.0);

  // Sampled polyline, parameter = sample index, derivatives by local
  // polynomial interpolation (finite-difference source).
  static Curve from_polyline(std::vector<Vec3> points);
  static Curve from_polyline_csv(const std::string& path);

  // Same geometry, restricted/changed parameter domain.
  Curve with_domain(double t_lo, double t_hi) const;

  // Same eval, but derivatives forced through the central-difference stencils
  // (for cross-checking the analytic oracle). step == 0 picks the balanced
  // default h = eps^(1/(order+4)) * param_scale per order.
  Curve with_finite_differences(double step = 0.0) const;

  // x -> M x + v, exact on trigonometric backends (coefficients transform),
  // point-wise on polylines. With M a scaled orthogonal matrix this is a
  // similarity, under which the conformal invariants must not move.
  Curve affine_transformed(const std::array<double, 9>& M, Vec3 v) const;

  Vec3 eval(double t) const;
  Vec3 derivative(double t, int order) const;

  // Taylor jets of the three coordinates at t. Analytic curves deliver any
  // order up to Jet::kMaxOrder; finite-difference curves are capped at
  // max_derivative_order().
  Jet3 jets(double t, int order) const;

  Interval domain() const { return domain_; }
  DerivativeSource derivative_source() const { return source_; }
  int max_derivative_order() const;

  // True when exact derivatives exist underneath (even if the source was
  // switched to finite differences); polylines return false. Difference
  // stencils balance against much larger noise in the sampled case.
  bool analytic_backend() const;

  // Length scale in parameter space used to size difference stencils.
  double param_scale() const { return param_scale_; }

  // Explicit stencil step for finite-difference sources (0 = per-order rule).
  double fd_step() const { return fd_step_; }

  struct Backend;  // internal evaluation strategy

 private:
  Curve(std::shared_ptr<const Backend> backend, Interval domain,
        DerivativeSource source, double param_scale);

  std::shared_ptr<const Backend> backend_;
  Interval domain_;
  DerivativeSource source_ = DerivativeSource::analytic;
  double param_scale_ = 1.0;
  double fd_step_ = 0.0;
};

// Central-difference derivative of the curve's eval map. Stencil width
// 2*floor(order/2)+5 (>= order+2), step h = eps^(1/(order+2)) * param scale,
// shifted one-sided where the domain would be left.
Vec3 fd_derivative(const Curve& curve, double t, int order, double step = 0.0);

// Finite-difference weights on arbitrary nodes (Fornberg). weights[j*n+i] is
// the coefficient of f(nodes[i]) in the approximation of f^(j)(x0).
void fd_weights(double x0, const std::vector<double>& nodes, int max_order,
                std::vector<double>& weights);

}  // namespace curvinv
