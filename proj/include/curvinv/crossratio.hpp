// Cross ratios of 4-point configurations, the six circumcircle crossing
// angles, the (p,q,r) constraint surface and the rounded-tetrahedron samples.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvinv/vec3.hpp"

namespace curvinv {

// C(i,j,k,l) = (x_ik / x_il)(x_jl / x_jk), 1-based indices.
double cross_ratio(const std::array<Vec3, 4>& x, int i, int j, int k, int l);

// The two independent cross ratios u = C(1,4,2,3), v = C(1,2,4,3).
std::pair<double, double> cross_ratio_uv(const std::array<Vec3, 4>& x);

struct PQR {
  double p = 0.0, q = 0.0, r = 0.0;
};

// p = (1+v^2-u^2)/2v, q = (1+u^2-v^2)/2u, r = (1-u^2-v^2)/2uv. Raises domain
// for non-positive u, v and out_of_region (naming the offending bound) when
// u+v >= 1 or |u-v| <= 1 fails.
PQR pqr_from_uv(double u, double v);

struct CrossRatioReport {
  double u = 0.0, v = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;   // from the u,v formulas
  double phi = 0.0, psi = 0.0, chi = 0.0;
  double residual_cubic = 0.0;        // p^2+q^2+r^2-2pqr-1
  double residual_branch = 0.0;       // r - (pq - sqrt((1-p^2)(1-q^2)))
  // Geometric crossing cosines (cc^(i), cc^(j)) via circumcircle tangents,
  // circles ordered by ascending remaining indices. geo[i-1][j-1], i < j.
  double geo[4][4] = {};
  double pairing_check = 0.0;         // max over complementary pairings, signed
  double point_consistency = 0.0;     // tangent dot at either common point
  double magnitude_residual = 0.0;    // max | |geo| - |formula| |
  bool sign_match = false;            // geometric signs match the formula values
  bool boundary_concyclic = false;    // u+v == 1: all crossing angles 0 or pi
};

// Full report for one configuration; raises degenerate_input on coincident
// points. Collinear triples are fine (their circle is a line). Signs of the
// geometric cosines depend on the tangent orientation convention; with the
// ascending-triple ordering used here they reproduce the formula signs on
// generic configurations, and the concyclic limit drives them to +-1 with the
// sign set by the traversal order. Tests pin |cos| agreement; sign_match
// records the observation.
CrossRatioReport pqr_from_circles(const std::array<Vec3, 4>& x);

std::string crossratio_report_to_json(const CrossRatioReport& rep);
std::string crossratio_report_to_csv(const CrossRatioReport& rep);

struct SurfaceSample {
  double p = 0.0, q = 0.0, r = 0.0;
  int branch = -1;            // sign in front of the square root of r(p,q)
  bool on_allowed_face = false;
};

// Samples of the cubic surface p^2+q^2+r^2-2pqr=1: a grid over the admissible
// (u,v) region mapped through the angle formulas (the allowed face, branch -1)
// plus both branches over the (p,q) square for context. Every sample satisfies
// the cubic to 1e-12.
std::vector<SurfaceSample> tetrahedron_surface(int grid_n);

std::string surface_to_csv(const std::vector<SurfaceSample>& samples);

}  // namespace curvinv
