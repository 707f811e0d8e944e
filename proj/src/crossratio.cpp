#include "curvinv/crossratio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "curvinv/error.hpp"
#include "curvinv/inversive.hpp"

namespace curvinv {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_distinct4(const std::array<Vec3, 4>& x, const char* who) {
  double scale = 1e-300;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) scale = std::max(scale, distance(x[i], x[j]));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (distance(x[i], x[j]) < 1e-14 * scale)
        raise(errc::degenerate_input, std::string(who) + ": coincident points");
}

}  // namespace

double cross_ratio(const std::array<Vec3, 4>& x, int i, int j, int k, int l) {
  for (int idx : {i, j, k, l})
    if (idx < 1 || idx > 4) raise(errc::invalid_argument, "cross_ratio: indices are 1..4");
  require_distinct4(x, "cross_ratio");
  auto d = [&x](int a, int b) { return distance(x[a - 1], x[b - 1]); };
  return (d(i, k) / d(i, l)) * (d(j, l) / d(j, k));
}

std::pair<double, double> cross_ratio_uv(const std::array<Vec3, 4>& x) {
  return {cross_ratio(x, 1, 4, 2, 3), cross_ratio(x, 1, 2, 4, 3)};
}

PQR pqr_from_uv(double u, double v) {
  if (!(u > 0.0)) raise(errc::domain, "pqr_from_uv: u must be positive");
  if (!(v > 0.0)) raise(errc::domain, "pqr_from_uv: v must be positive");
  const double slack = 1e-12;
  if (u + v < 1.0 - slack)
    raise(errc::out_of_region, "pqr_from_uv: bound u+v >= 1 violated (u+v = " +
                                   fmt17(u + v) + ")");
  if (std::abs(u - v) > 1.0 + slack)
    raise(errc::out_of_region, "pqr_from_uv: bound |u-v| <= 1 violated (|u-v| = " +
                                   fmt17(std::abs(u - v)) + ")");
  PQR out;
  out.p = (1.0 + v * v - u * u) / (2.0 * v);
  out.q = (1.0 + u * u - v * v) / (2.0 * u);
  out.r = (1.0 - u * u - v * v) / (2.0 * u * v);
  return out;
}

namespace {

// Tangent of circle cc^(omit) (the circumcircle of the three remaining
// points, ordered by ascending index) at corner `at`.
Vec3 omitted_circle_tangent(const std::array<Vec3, 4>& x, int omit, int at) {
  int tri[3], n = 0;
  for (int k = 1; k <= 4; ++k)
    if (k != omit) tri[n++] = k;
  int pos = at == tri[0] ? 1 : (at == tri[1] ? 2 : 3);
  return circle_tangent(x[tri[0] - 1], x[tri[1] - 1], x[tri[2] - 1], pos);
}

}  // namespace

CrossRatioReport pqr_from_circles(const std::array<Vec3, 4>& x) {
  require_distinct4(x, "pqr_from_circles");
  CrossRatioReport rep;
  std::tie(rep.u, rep.v) = cross_ratio_uv(x);
  PQR f = pqr_from_uv(rep.u, rep.v);
  rep.p = f.p;
  rep.q = f.q;
  rep.r = f.r;
  rep.phi = std::acos(clamp_cosine(rep.p));
  rep.psi = std::acos(clamp_cosine(rep.q));
  rep.chi = std::acos(clamp_cosine(rep.r));
  rep.residual_cubic =
      rep.p * rep.p + rep.q * rep.q + rep.r * rep.r - 2.0 * rep.p * rep.q * rep.r - 1.0;
  rep.residual_branch =
      rep.r - (rep.p * rep.q -
               std::sqrt(std::max(0.0, (1.0 - rep.p * rep.p) * (1.0 - rep.q * rep.q))));
  rep.boundary_concyclic = std::abs(rep.u + rep.v - 1.0) <= 1e-9;

  rep.point_consistency = 0.0;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      int common[2], n = 0;
      for (int k = 1; k <= 4; ++k)
        if (k != i && k != j) common[n++] = k;
      double c0 = dot(omitted_circle_tangent(x, i, common[0]),
                      omitted_circle_tangent(x, j, common[0]));
      double c1 = dot(omitted_circle_tangent(x, i, common[1]),
                      omitted_circle_tangent(x, j, common[1]));
      rep.point_consistency = std::max(rep.point_consistency, std::abs(c0 - c1));
      rep.geo[i - 1][j - 1] = c0;
    }
  }
  auto geo = [&rep](int i, int j) { return rep.geo[i - 1][j - 1]; };
  rep.pairing_check = std::max({std::abs(geo(1, 2) - geo(3, 4)),
                                std::abs(geo(1, 4) - geo(2, 3)),
                                std::abs(geo(1, 3) - geo(2, 4))});
  double formula[3] = {rep.p, rep.q, rep.r};
  double geom[3] = {geo(1, 2), geo(1, 4), geo(1, 3)};
  rep.magnitude_residual = 0.0;
  rep.sign_match = true;
  for (int k = 0; k < 3; ++k) {
    rep.magnitude_residual = std::max(
        rep.magnitude_residual, std::abs(std::abs(geom[k]) - std::abs(formula[k])));
    if (std::abs(formula[k]) > 1e-9 && std::signbit(geom[k]) != std::signbit(formula[k]))
      rep.sign_match = false;
  }
  return rep;
}

std::string crossratio_report_to_json(const CrossRatioReport& rep) {
  nlohmann::json j;
  j["u"] = rep.u;
  j["v"] = rep.v;
  j["p"] = rep.p;
  j["q"] = rep.q;
  j["r"] = rep.r;
  j["phi"] = rep.phi;
  j["psi"] = rep.psi;
  j["chi"] = rep.chi;
  j["residual_cubic"] = rep.residual_cubic;
  j["residual_branch"] = rep.residual_branch;
  j["pairing_check"] = rep.pairing_check;
  j["point_consistency"] = rep.point_consistency;
  j["magnitude_residual"] = rep.magnitude_residual;
  j["sign_match"] = rep.sign_match;
  j["boundary_concyclic"] = rep.boundary_concyclic;
  nlohmann::json geo = nlohmann::json::object();
  for (int i = 1; i <= 4; ++i)
    for (int jx = i + 1; jx <= 4; ++jx)
      geo["cc" + std::to_string(i) + "_cc" + std::to_string(jx)] = rep.geo[i - 1][jx - 1];
  j["crossing_cosines"] = geo;
  return j.dump(2) + "\n";
}

std::string crossratio_report_to_csv(const CrossRatioReport& rep) {
  std::string out = "key,value\n";
  auto row = [&out](const char* k, double v) {
    out += std::string(k) + "," + fmt17(v) + "\n";
  };
  row("u", rep.u);
  row("v", rep.v);
  row("p", rep.p);
  row("q", rep.q);
  row("r", rep.r);
  row("phi", rep.phi);
  row("psi", rep.psi);
  row("chi", rep.chi);
  row("residual_cubic", rep.residual_cubic);
  row("residual_branch", rep.residual_branch);
  row("pairing_check", rep.pairing_check);
  row("point_consistency", rep.point_consistency);
  row("magnitude_residual", rep.magnitude_residual);
  out += std::string("sign_match,") + (rep.sign_match ? "1" : "0") + "\n";
  out += std::string("boundary_concyclic,") + (rep.boundary_concyclic ? "1" : "0") + "\n";
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      row(("cc" + std::to_string(i) + "_cc" + std::to_string(j)).c_str(),
          rep.geo[i - 1][j - 1]);
  return out;
}

std::vector<SurfaceSample> tetrahedron_surface(int grid_n) {
  if (grid_n < 2) raise(errc::invalid_argument, "tetrahedron_surface: grid_n >= 2");
  std::vector<SurfaceSample> out;
  // Allowed face: the admissible strip u+v >= 1, |u-v| <= 1 in (sigma, delta)
  // coordinates, sigma = u+v compactified toward the far end of the strip.
  const double w_max = 0.98;  // sigma up to 50
  for (int i = 0; i < grid_n; ++i) {
    double w = w_max * i / (grid_n - 1);
    double sigma = 1.0 / (1.0 - w);
    for (int j = 0; j < grid_n; ++j) {
      double delta = -1.0 + 2.0 * j / (grid_n - 1);
      double u = 0.5 * (sigma + delta), v = 0.5 * (sigma - delta);
      if (u < 1e-9 || v < 1e-9) continue;  // strip corners degenerate
      PQR f = pqr_from_uv(u, v);
      SurfaceSample s;
      s.p = clamp_cosine(f.p);
      s.q = clamp_cosine(f.q);
      s.r = clamp_cosine(f.r);
      s.branch = -1;
      s.on_allowed_face = true;
      out.push_back(s);
    }
  }
  // Context: the full cubic, both branch signs over the (p,q) square.
  for (int i = 0; i < grid_n; ++i) {
    double p = -1.0 + 2.0 * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      double q = -1.0 + 2.0 * j / (grid_n - 1);
      double root = std::sqrt(std::max(0.0, (1.0 - p * p) * (1.0 - q * q)));
      for (int branch : {-1, 1}) {
        SurfaceSample s;
        s.p = p;
        s.q = q;
        s.r = p * q + branch * root;
        s.branch = branch;
        s.on_allowed_face = false;
        out.push_back(s);
      }
    }
  }
  for (const SurfaceSample& s : out) {
    double resid = s.p * s.p + s.q * s.q + s.r * s.r - 2.0 * s.p * s.q * s.r - 1.0;
    if (std::abs(resid) > 1e-12)
      raise(errc::numerical, "tetrahedron_surface: cubic residual above 1e-12");
  }
  return out;
}

std::string surface_to_csv(const std::vector<SurfaceSample>& samples) {
  std::string out = "p,q,r,branch,on_allowed_face\n";
  for (const SurfaceSample& s : samples)
    out += fmt17(s.p) + "," + fmt17(s.q) + "," + fmt17(s.r) + "," +
           std::to_string(s.branch) + "," + (s.on_allowed_face ? "1" : "0") + "\n";
  return out;
}

}  // namespace curvinv
