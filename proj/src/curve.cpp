#include "curvinv/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "curvinv/error.hpp"
#include "curvinv/rng.hpp"

namespace curvinv {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::unknown_curve: return "unknown_curve";
    case errc::invalid_params: return "invalid_params";
    case errc::domain: return "domain";
    case errc::degenerate_curve: return "degenerate_curve";
    case errc::degenerate_input: return "degenerate_input";
    case errc::inflection_point: return "inflection_point";
    case errc::conformal_degeneracy: return "conformal_degeneracy";
    case errc::degenerate_sphere: return "degenerate_sphere";
    case errc::pole: return "pole";
    case errc::capability: return "capability";
    case errc::out_of_region: return "out_of_region";
    case errc::numerical: return "numerical";
    case errc::io: return "io";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// TrigSeries

void TrigSeries::add_cos(int freq, double c) {
  if (c == 0.0) return;
  if (freq < 0) freq = -freq;  // cos(-kt) == cos(kt)
  if (freq == 0) { offset += c; return; }
  if (static_cast<int>(cos_coeff.size()) < freq) cos_coeff.resize(freq, 0.0);
  cos_coeff[freq - 1] += c;
}

void TrigSeries::add_sin(int freq, double c) {
  if (c == 0.0) return;
  if (freq == 0) return;  // sin(0) == 0
  if (freq < 0) { freq = -freq; c = -c; }
  if (static_cast<int>(sin_coeff.size()) < freq) sin_coeff.resize(freq, 0.0);
  sin_coeff[freq - 1] += c;
}

double TrigSeries::eval(double t) const { return derivative(t, 0); }

double TrigSeries::derivative(double t, int order) const {
  double acc = 0.0;
  if (order == 0) acc = offset + slope * t;
  if (order == 1) acc = slope;
  // (a cos kt + b sin kt)' = kb cos kt - ka sin kt: rotate the pair per order.
  std::size_t nfreq = std::max(cos_coeff.size(), sin_coeff.size());
  for (std::size_t i = 0; i < nfreq; ++i) {
    double a = i < cos_coeff.size() ? cos_coeff[i] : 0.0;
    double b = i < sin_coeff.size() ? sin_coeff[i] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    double k = static_cast<double>(i + 1);
    double scale = std::pow(k, order);
    switch (order & 3) {
      case 1: std::swap(a, b); b = -b; break;
      case 2: a = -a; b = -b; break;
      case 3: std::swap(a, b); a = -a; break;
      default: break;
    }
    acc += scale * (a * std::cos(k * t) + b * std::sin(k * t));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Backends

struct Curve::Backend {
  virtual ~Backend() = default;
  virtual Vec3 eval(double t) const = 0;
  virtual bool analytic() const = 0;
  virtual Jet3 analytic_jets(double /*t*/, int /*order*/) const {
    raise(errc::capability, "curve: analytic jets not available");
  }
  virtual int max_order() const = 0;
  virtual std::shared_ptr<const Backend> affine(const std::array<double, 9>& M,
                                                Vec3 v) const = 0;
};

namespace {

struct TrigBackend final : Curve::Backend {
  TrigSeries cx, cy, cz;

  Vec3 eval(double t) const override {
    return {cx.eval(t), cy.eval(t), cz.eval(t)};
  }
  bool analytic() const override { return true; }
  int max_order() const override { return Jet::kMaxOrder; }
  Jet3 analytic_jets(double t, int order) const override {
    Jet3 j{Jet(0.0, order), Jet(0.0, order), Jet(0.0, order)};
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 1) fact *= k;
      j.x.set_coeff(k, cx.derivative(t, k) / fact);
      j.y.set_coeff(k, cy.derivative(t, k) / fact);
      j.z.set_coeff(k, cz.derivative(t, k) / fact);
    }
    return j;
  }
  std::shared_ptr<const Backend> affine(const std::array<double, 9>& M,
                                        Vec3 v) const override {
    const TrigSeries* in[3] = {&cx, &cy, &cz};
    auto out = std::make_shared<TrigBackend>();
    TrigSeries* comps[3] = {&out->cx, &out->cy, &out->cz};
    for (int i = 0; i < 3; ++i) {
      TrigSeries& c = *comps[i];
      c.offset = v[i];
      for (int j = 0; j < 3; ++j) {
        double m = M[static_cast<std::size_t>(3 * i + j)];
        if (m == 0.0) continue;
        c.offset += m * in[j]->offset;
        c.slope += m * in[j]->slope;
        for (std::size_t k = 0; k < in[j]->cos_coeff.size(); ++k)
          c.add_cos(static_cast<int>(k + 1), m * in[j]->cos_coeff[k]);
        for (std::size_t k = 0; k < in[j]->sin_coeff.size(); ++k)
          c.add_sin(static_cast<int>(k + 1), m * in[j]->sin_coeff[k]);
      }
    }
    return out;
  }
};

struct PolylineBackend final : Curve::Backend {
  std::vector<Vec3> points;
  static constexpr int kWindow = 8;  // interpolation window, derivatives to 5

  Vec3 eval(double t) const override {
    int n = static_cast<int>(points.size());
    int lo = static_cast<int>(std::floor(t)) - kWindow / 2 + 1;
    lo = std::clamp(lo, 0, n - kWindow);
    std::vector<double> nodes(kWindow);
    for (int i = 0; i < kWindow; ++i) nodes[i] = lo + i;
    std::vector<double> w;
    fd_weights(t, nodes, 0, w);
    Vec3 acc{};
    for (int i = 0; i < kWindow; ++i) acc += w[i] * points[lo + i];
    return acc;
  }
  bool analytic() const override { return false; }
  int max_order() const override { return 5; }
  std::shared_ptr<const Backend> affine(const std::array<double, 9>& M,
                                        Vec3 v) const override {
    auto out = std::make_shared<PolylineBackend>();
    out->points.reserve(points.size());
    for (Vec3 p : points)
      out->points.push_back({M[0] * p.x + M[1] * p.y + M[2] * p.z + v.x,
                             M[3] * p.x + M[4] * p.y + M[5] * p.z + v.y,
                             M[6] * p.x + M[7] * p.y + M[8] * p.z + v.z});
    return out;
  }
};

double parse_double(const std::string& tok, const std::string& path) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) raise(errc::io, "polyline csv: trailing junk in '" + tok + "' (" + path + ")");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    raise(errc::io, "polyline csv: cannot parse '" + tok + "' (" + path + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Curve

Curve::Curve(std::shared_ptr<const Backend> backend, Interval domain,
             DerivativeSource source, double param_scale)
    : backend_(std::move(backend)), domain_(domain), source_(source),
      param_scale_(param_scale) {}

Curve Curve::from_trig_series(TrigSeries x, TrigSeries y, TrigSeries z,
                              Interval domain, double param_scale) {
  auto b = std::make_shared<TrigBackend>();
  b->cx = std::move(x);
  b->cy = std::move(y);
  b->cz = std::move(z);
  return Curve(b, domain, DerivativeSource::analytic, param_scale);
}

Curve Curve::catalog(const std::string& name, const std::vector<double>& params) {
  constexpr double kTwoPi = 6.283185307179586;
  if (name == "helix") {
    if (params.size() != 2)
      raise(errc::invalid_params, "helix expects params a,b");
    double a = params[0], b = params[1];
    if (!(a > 0.0)) raise(errc::invalid_params, "helix: need a > 0");
    TrigSeries x, y, z;
    x.add_cos(1, a);
    y.add_sin(1, a);
    z.slope = b;
    return from_trig_series(x, y, z, {0.0, 3.0 * kTwoPi}, 1.0);
  }
  if (name == "torus_knot") {
    if (params.size() != 4)
      raise(errc::invalid_params, "torus_knot expects params p,q,R,r");
    double pd = params[0], qd = params[1], R = params[2], r = params[3];
    int p = static_cast<int>(std::lround(pd)), q = static_cast<int>(std::lround(qd));
    if (p != pd || q != qd || p < 1 || q < 1)
      raise(errc::invalid_params, "torus_knot: p,q must be positive integers");
    if (!(R > r && r > 0.0)) raise(errc::invalid_params, "torus_knot: need R > r > 0");
    // (R + r cos qt)(cos pt, sin pt), r sin qt expanded into pure harmonics.
    TrigSeries x, y, z;
    x.add_cos(p, R);
    x.add_cos(q + p, r / 2.0);
    x.add_cos(q - p, r / 2.0);
    y.add_sin(p, R);
    y.add_sin(p + q, r / 2.0);
    y.add_sin(p - q, r / 2.0);
    z.add_sin(q, r);
    return from_trig_series(x, y, z, {0.0, kTwoPi}, 1.0 / (p + q));
  }
  if (name == "trig_poly") {
    if (params.size() != 2)
      raise(errc::invalid_params, "trig_poly expects params seed,degree");
    double sd = params[0], dd = params[1];
    int degree = static_cast<int>(std::lround(dd));
    if (degree != dd || degree < 2)
      raise(errc::invalid_params, "trig_poly: degree must be an integer >= 2");
    if (sd < 0 || sd != std::floor(sd))
      raise(errc::invalid_params, "trig_poly: seed must be a non-negative integer");
    Rng rng(static_cast<std::uint64_t>(sd));
    TrigSeries comp[3];
    for (auto& c : comp) {
      for (int k = 1; k <= degree; ++k) {
        c.add_cos(k, rng.next_symmetric() / k);
        c.add_sin(k, rng.next_symmetric() / k);
      }
    }
    Curve curve = from_trig_series(comp[0], comp[1], comp[2], {0.0, kTwoPi},
                                   1.0 / degree);
    // Reject draws that are not comfortably regular.
    double min_speed = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4096; ++i) {
      double t = kTwoPi * i / 4096.0;
      min_speed = std::min(min_speed, norm(curve.derivative(t, 1)));
    }
    if (min_speed < 1e-6)
      raise(errc::invalid_params, "trig_poly: drawn curve is not regular (|x'| ~ " +
                                      std::to_string(min_speed) + ")");
    return curve;
  }
  raise(errc::unknown_curve, "unknown catalog curve '" + name + "'");
}

Curve Curve::from_polyline(std::vector<Vec3> points) {
  if (points.size() < PolylineBackend::kWindow)
    raise(errc::invalid_argument, "polyline needs at least 8 points");
  for (const Vec3& p : points)
    if (!all_finite(p)) raise(errc::invalid_argument, "polyline: non-finite point");
  auto b = std::make_shared<PolylineBackend>();
  b->points = std::move(points);
  Interval dom{0.0, static_cast<double>(b->points.size() - 1)};
  // features below ~the interpolation window are unresolvable anyway
  return Curve(b, dom, DerivativeSource::finite_difference, 5.0);
}

Curve Curve::from_polyline_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io, "cannot open polyline csv: " + path);
  std::vector<Vec3> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ss(line);
    std::string a, b, c, extra;
    if (!(ss >> a >> b >> c))
      raise(errc::io, "polyline csv: expected three columns in '" + line + "'");
    if (ss >> extra)
      raise(errc::io, "polyline csv: more than three columns in '" + line + "'");
    pts.push_back({parse_double(a, path), parse_double(b, path), parse_double(c, path)});
  }
  return from_polyline(std::move(pts));
}

Curve Curve::with_domain(double t_lo, double t_hi) const {
  if (!(t_hi > t_lo)) raise(errc::invalid_argument, "with_domain: need t_hi > t_lo");
  return Curve(backend_, {t_lo, t_hi}, source_, param_scale_);
}

Curve Curve::with_finite_differences(double step) const {
  if (step < 0.0)
    raise(errc::invalid_argument, "with_finite_differences: step must be >= 0");
  Curve c(backend_, domain_, DerivativeSource::finite_difference, param_scale_);
  c.fd_step_ = step;
  return c;
}

Curve Curve::affine_transformed(const std::array<double, 9>& M, Vec3 v) const {
  return Curve(backend_->affine(M, v), domain_, source_, param_scale_);
}

Vec3 Curve::eval(double t) const {
  if (!domain_.contains(t, 1e-9 * std::max(1.0, std::abs(domain_.length()))))
    raise(errc::domain, "curve eval: parameter outside domain");
  return backend_->eval(t);
}

int Curve::max_derivative_order() const {
  return source_ == DerivativeSource::analytic ? backend_->max_order() : 5;
}

bool Curve::analytic_backend() const { return backend_->analytic(); }

Vec3 Curve::derivative(double t, int order) const {
  if (order < 0) raise(errc::invalid_argument, "derivative: negative order");
  if (order == 0) return eval(t);
  if (order > max_derivative_order())
    raise(errc::capability, "derivative: order beyond this curve's capability");
  if (source_ == DerivativeSource::analytic) {
    Jet3 j = backend_->analytic_jets(t, order);
    double fact = 1.0;
    for (int i = 2; i <= order; ++i) fact *= i;
    return {fact * j.x.coeff(order), fact * j.y.coeff(order), fact * j.z.coeff(order)};
  }
  return fd_derivative(*this, t, order, fd_step_);
}

Jet3 Curve::jets(double t, int order) const {
  if (!domain_.contains(t, 1e-9 * std::max(1.0, std::abs(domain_.length()))))
    raise(errc::domain, "curve jets: parameter outside domain");
  if (order > max_derivative_order())
    raise(errc::capability, "jets: order beyond this curve's capability");
  if (source_ == DerivativeSource::analytic) return backend_->analytic_jets(t, order);
  Jet3 j{Jet(0.0, order), Jet(0.0, order), Jet(0.0, order)};
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 1) fact *= k;
    Vec3 d = k == 0 ? eval(t) : fd_derivative(*this, t, k, fd_step_);
    j.x.set_coeff(k, d.x / fact);
    j.y.set_coeff(k, d.y / fact);
    j.z.set_coeff(k, d.z / fact);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Finite differences

// B. Fornberg, "Generation of finite difference formulas on arbitrarily
// spaced grids", Math. Comp. 51 (1988).
void fd_weights(double x0, const std::vector<double>& nodes, int max_order,
                std::vector<double>& weights) {
  int n = static_cast<int>(nodes.size());
  if (n < max_order + 1)
    raise(errc::invalid_argument, "fd_weights: not enough nodes for requested order");
  weights.assign(static_cast<std::size_t>(max_order + 1) * n, 0.0);
  auto w = [&](int j, int i) -> double& { return weights[static_cast<std::size_t>(j) * n + i]; };
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  w(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, max_order);
    double c2 = 1.0;
    double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          w(k, i) = c1 * (k * w(k - 1, i - 1) - c5 * w(k, i - 1)) / c2;
        w(0, i) = -c1 * c5 * w(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k)
        w(k, j) = (c4 * w(k, j) - k * w(k - 1, j)) / c3;
      w(0, j) = c4 * w(0, j) / c3;
    }
    c1 = c2;
  }
}

Vec3 fd_derivative(const Curve& curve, double t, int order, double step) {
  if (order < 1 || order > 5)
    raise(errc::capability, "fd_derivative supports orders 1..5");
  double h = step > 0.0 ? step : curve.fd_step();
  if (h <= 0.0) {
    // balances stencil truncation O(h^4) against roundoff O(eps/h^order)
    double eps = std::numeric_limits<double>::epsilon();
    h = std::pow(eps, 1.0 / (order + 4)) * curve.param_scale();
  }
  int width = 2 * (order / 2) + 5;  // odd, >= order+2, 4th-order accurate
  int half = width / 2;
  Interval dom = curve.domain();
  // Shift the stencil to stay inside the domain (one-sided near the ends).
  double lo = t - half * h;
  if (lo < dom.lo) lo = dom.lo;
  if (lo + (width - 1) * h > dom.hi) lo = dom.hi - (width - 1) * h;
  if (lo < dom.lo)
    raise(errc::domain, "fd_derivative: domain too short for the stencil");
  std::vector<double> nodes(width);
  for (int i = 0; i < width; ++i) nodes[i] = lo + i * h;
  std::vector<double> w;
  fd_weights(t, nodes, order, w);
  Vec3 acc{};
  for (int i = 0; i < width; ++i)
    acc += w[static_cast<std::size_t>(order) * width + i] * curve.eval(nodes[i]);
  return acc;
}

}  // namespace curvinv
