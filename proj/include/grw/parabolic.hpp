#pragma once
// Finite-element capacity of annuli on an immersed surface, used to probe
// parabolicity: a complete surface is parabolic iff the capacity of the
// annulus A(r, R) about a fixed center decays to zero as R grows.
//
// Meshes are polar: one center vertex plus concentric vertex rings, uniformly
// spaced in induced radial arc length and snapped so that requested radii
// land exactly on a ring. Ring radii are measured along the angle-0 ray; when
// the induced metric is rotationally symmetric about the center (true for
// every built-in surface) the stored per-vertex radii are exact geodesic
// distances, otherwise they are a ray approximation and the Dijkstra distance
// below provides the general-purpose alternative.

#include <array>
#include <string>
#include <vector>

#include "grw/surface.hpp"

namespace grw {

enum class RadiusMode {
  Geodesic,  // radii measured in induced arc length from the center
  Parameter  // radii measured in the flat parameter plane
};

struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;      // parameter coordinates
  std::vector<std::array<int, 3>> triangles;  // CCW in the parameter plane
  std::vector<Eigen::Matrix2d> metric;        // induced metric per vertex
  std::vector<int> ring_of;                   // ring index per vertex (0 = center)
  std::vector<double> ring_s;    // induced radial arc length per ring
  std::vector<double> ring_rho;  // parameter radius per ring
  std::vector<double> distance;  // per vertex, filled by geodesic_distance
  int rays = 0;
  Eigen::Vector2d center{0, 0};

  int ring_count() const { return static_cast<int>(ring_s.size()); }
  // Ring whose radius (in the given mode) matches r, or -1.
  int ring_at_radius(double r, RadiusMode mode, double tol = 1e-9) const;
};

// extent and snap_radii are interpreted in `mode` units. Every snap radius is
// guaranteed to land exactly on a ring. Rings are spaced h apart in induced
// radial arc length; the ray count targets an angular spacing of sqrt(3) h at
// the first snap radius (or at half the extent when no snaps are given), so
// each triangle budgets the area sqrt(3)/2 h^2.
TriMesh build_mesh(const Immersion& im, const Eigen::Vector2d& center,
                   double extent, double h, RadiusMode mode = RadiusMode::Geodesic,
                   const std::vector<double>& snap_radii = {});

// Shortest-path distance from a source vertex along mesh edges, each edge
// weighted by the induced length of its parameter segment. Fills
// mesh.distance and returns a reference to it.
const std::vector<double>& geodesic_distance(TriMesh& mesh, int source);

struct HarmonicMeasure {
  std::vector<double> omega;  // per vertex; 0 inside ring_r, 1 outside ring_R
  double capacity = 0;        // Dirichlet energy of omega over the annulus
  int dofs = 0;
  int iterations = 0;
  double residual = 0;        // final relative residual of the CG solve
  double min_omega = 1, max_omega = 0;  // over the free vertices
};

// P1 finite elements on the annulus between two mesh rings, solved with
// Jacobi-preconditioned conjugate gradients (relative residual 1e-12, well
// inside the 1e-10 budget, so the discrete maximum principle holds to about
// solver precision on these meshes).
HarmonicMeasure harmonic_measure(const TriMesh& mesh, int ring_r, int ring_R);

struct CapacityResult {
  double r = 0, R = 0;
  double capacity = 0;
  int dofs = 0;
  double residual = 0;
};

CapacityResult capacity(const Immersion& im, const Eigen::Vector2d& center,
                        double r, double R, double h,
                        RadiusMode mode = RadiusMode::Geodesic);

struct ScanResult {
  std::vector<CapacityResult> points;
  std::string verdict;        // "plateau", "decaying", or "indeterminate"
  double limit_estimate = 0;  // plateau level, or 0 for a decaying scan
  std::string note;
};

// Capacity of A(r, R) for each R in R_list. Verdict: "plateau" when the last
// step changes the capacity by under 1%, which is evidence against
// parabolicity; "decaying" when the sequence strictly decreases and its tail
// fits const/log(R/r) within 20%, the parabolic signature; otherwise
// "indeterminate". The plateau test runs first: a capacity that has already
// converged can still be fitted by a slowly decaying curve, so testing decay
// first would misclassify it.
ScanResult parabolicity_scan(const Immersion& im, const Eigen::Vector2d& center,
                             double r, const std::vector<double>& R_list,
                             double h, RadiusMode mode = RadiusMode::Geodesic);

struct EnergyBound {
  double lhs = 0;  // P1 quadrature of |grad u|^2 over B_r
  double rhs = 0;  // 4 sup_{B_R} u^2 * capacity * slack_factor
  double slack_factor = 1.05;
  double slack = 0;  // rhs - lhs
  double sup_u = 0;
  bool precondition_ok = false;  // u * (Laplacian of u) >= -tol on the sample
  double min_u_lap_u = 0;
  CapacityResult cap;
  std::string note;
};

// The capacity estimate for the Dirichlet energy of u on B_r:
//   integral_{B_r} |grad u|^2 <= 4 sup_{B_R} u^2 * cap(r, R),
// valid when u * (Laplacian of u) >= 0. Both sides are evaluated numerically
// (the right side with a 5% quadrature allowance); when the precondition
// fails on the sample the bound is reported anyway but flagged.
EnergyBound energy_capacity_check(const Immersion& im,
                                  const Eigen::Vector2d& center, double r,
                                  double R, double h,
                                  RadiusMode mode = RadiusMode::Geodesic);

}  // namespace grw
