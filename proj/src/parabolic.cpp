#include "grw/parabolic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <utility>

namespace grw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Induced length of a unit parameter step along the angle-0 ray through the
// center, i.e. sqrt(g_xx) at center + (rho, 0).
double radial_speed(const Immersion& im, const Eigen::Vector2d& center,
                    double rho) {
  const Eigen::Vector2d p = center + Eigen::Vector2d(rho, 0.0);
  const double v = evaluate_surface(im, p).gmat(0, 0);
  if (!(v > 0)) {
    throw GeometryError("mesh ray leaves the region where the induced metric is positive");
  }
  return std::sqrt(v);
}

// Arc length accumulated along the angle-0 ray from rho_a to rho_b
// (composite Simpson quadrature of the radial speed).
double arc_from_param(const Immersion& im, const Eigen::Vector2d& center,
                      double rho_a, double rho_b, double h) {
  const int nsub = std::max(16, static_cast<int>(std::ceil((rho_b - rho_a) / (0.125 * h))));
  const double dr = (rho_b - rho_a) / nsub;
  double s = 0;
  for (int i = 0; i < nsub; ++i) {
    const double a = rho_a + i * dr;
    s += dr / 6.0 *
         (radial_speed(im, center, a) + 4.0 * radial_speed(im, center, a + 0.5 * dr) +
          radial_speed(im, center, a + dr));
  }
  return s;
}

// Parameter radius reached by advancing ds in arc length from (s, rho_a),
// integrating d(rho)/ds = 1 / radial_speed with classical RK4.
double param_from_arc(const Immersion& im, const Eigen::Vector2d& center,
                      double rho_a, double ds, double h) {
  const int nsub = std::max(8, static_cast<int>(std::ceil(ds / (0.125 * h))));
  const double step = ds / nsub;
  double rho = rho_a;
  const auto slope = [&](double r) { return 1.0 / radial_speed(im, center, r); };
  for (int i = 0; i < nsub; ++i) {
    const double k1 = slope(rho);
    const double k2 = slope(rho + 0.5 * step * k1);
    const double k3 = slope(rho + 0.5 * step * k2);
    const double k4 = slope(rho + step * k3);
    rho += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

// Induced circumference of the parameter circle of radius rho about the
// center (256-point midpoint rule).
double circumference(const Immersion& im, const Eigen::Vector2d& center,
                     double rho) {
  const int nq = 256;
  double acc = 0;
  for (int i = 0; i < nq; ++i) {
    const double th = kTwoPi * (i + 0.5) / nq;
    const Eigen::Vector2d dir(std::cos(th), std::sin(th));
    const Eigen::Vector2d tng(-std::sin(th), std::cos(th));
    const Eigen::Matrix2d g = evaluate_surface(im, center + rho * dir).gmat;
    acc += std::sqrt(std::max(0.0, rho * rho * tng.dot(g * tng)));
  }
  return acc * kTwoPi / nq;
}

Eigen::Vector2d rot90(const Eigen::Vector2d& v) {
  return Eigen::Vector2d(-v.y(), v.x());
}

// P1 stiffness of one triangle: K(a,b) = A * sqrt(det G) * grad_a' G^{-1} grad_b
// with G the average of the three vertex metrics and the hat gradients taken
// in parameter coordinates.
Eigen::Matrix3d element_stiffness(const TriMesh& m, const std::array<int, 3>& t) {
  const Eigen::Vector2d& p0 = m.vertices[t[0]];
  const Eigen::Vector2d& p1 = m.vertices[t[1]];
  const Eigen::Vector2d& p2 = m.vertices[t[2]];
  const double area2 =
      (p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x();
  const Eigen::Matrix2d g =
      (m.metric[t[0]] + m.metric[t[1]] + m.metric[t[2]]) / 3.0;
  const Eigen::Matrix2d gi = g.inverse();
  const double w = 0.5 * area2 * std::sqrt(g.determinant());
  Eigen::Vector2d grad[3];
  grad[0] = rot90(p2 - p1) / area2;
  grad[1] = rot90(p0 - p2) / area2;
  grad[2] = rot90(p1 - p0) / area2;
  Eigen::Matrix3d k;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      k(a, b) = w * grad[a].dot(gi * grad[b]);
    }
  }
  return k;
}

bool triangle_in_band(const TriMesh& m, const std::array<int, 3>& t, int lo,
                      int hi) {
  for (int v : t) {
    const int rg = m.ring_of[v];
    if (rg < lo || rg > hi) return false;
  }
  return true;
}

std::string format_note(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return std::string(buf);
}

}  // namespace

int TriMesh::ring_at_radius(double r, RadiusMode mode, double tol) const {
  const std::vector<double>& radii = (mode == RadiusMode::Geodesic) ? ring_s : ring_rho;
  for (int k = 0; k < static_cast<int>(radii.size()); ++k) {
    if (std::abs(radii[k] - r) <= tol * std::max(1.0, std::abs(r))) return k;
  }
  return -1;
}

TriMesh build_mesh(const Immersion& im, const Eigen::Vector2d& center,
                   double extent, double h, RadiusMode mode,
                   const std::vector<double>& snap_radii) {
  if (!(extent > 0) || !(h > 0)) {
    throw GeometryError("mesh extent and spacing must be positive");
  }
  if (!(h < extent)) {
    throw GeometryError("mesh spacing must be smaller than the mesh extent");
  }

  std::vector<double> bp{0.0, extent};
  for (double r : snap_radii) {
    if (!(r > 0) || r > extent * (1.0 + 1e-12)) {
      throw GeometryError("snap radius must lie in (0, extent]");
    }
    bp.push_back(std::min(r, extent));
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
           bp.end());
  const int nbp = static_cast<int>(bp.size());

  // Breakpoints in both coordinates: the coordinate matching `mode` is exact,
  // the other is integrated along the angle-0 ray.
  std::vector<double> bs(nbp), brho(nbp);
  bs[0] = 0;
  brho[0] = 0;
  for (int i = 1; i < nbp; ++i) {
    if (mode == RadiusMode::Geodesic) {
      bs[i] = bp[i];
      brho[i] = param_from_arc(im, center, brho[i - 1], bs[i] - bs[i - 1], h);
    } else {
      brho[i] = bp[i];
      bs[i] = bs[i - 1] + arc_from_param(im, center, brho[i - 1], brho[i], h);
    }
  }

  TriMesh mesh;
  mesh.center = center;
  mesh.ring_s.push_back(0.0);
  mesh.ring_rho.push_back(0.0);
  for (int i = 0; i + 1 < nbp; ++i) {
    const double sa = bs[i], sb = bs[i + 1];
    const int n = std::max(1, static_cast<int>(std::lround((sb - sa) / h)));
    for (int k = 1; k <= n; ++k) {
      if (k == n) {
        mesh.ring_s.push_back(sb);
        mesh.ring_rho.push_back(brho[i + 1]);
      } else {
        const double st = sa + (sb - sa) * k / n;
        const double rho =
            param_from_arc(im, center, mesh.ring_rho.back(), st - mesh.ring_s.back(), h);
        mesh.ring_s.push_back(st);
        mesh.ring_rho.push_back(rho);
      }
    }
  }
  const int nrings = mesh.ring_count() - 1;  // vertex rings, excluding the center

  // Ray count: induced circumference at the reference radius over h. The
  // reference is the first snap radius when one is given (it is where the
  // solution varies), otherwise the ring nearest half the radial span.
  double rho_ref;
  if (nbp > 2) {
    rho_ref = brho[1];
  } else {
    const double target = 0.5 * bs[nbp - 1];
    int best = 1;
    for (int k = 1; k <= nrings; ++k) {
      if (std::abs(mesh.ring_s[k] - target) < std::abs(mesh.ring_s[best] - target)) best = k;
    }
    rho_ref = mesh.ring_rho[best];
  }
  // Target cell: radial spacing h, angular spacing sqrt(3) h, two triangles
  // per cell, so each triangle budgets the area sqrt(3)/2 h^2.
  const int rays = std::max(
      8, static_cast<int>(std::lround(circumference(im, center, rho_ref) /
                                      (std::sqrt(3.0) * h))));
  mesh.rays = rays;

  mesh.vertices.reserve(1 + static_cast<std::size_t>(nrings) * rays);
  mesh.vertices.push_back(center);
  mesh.ring_of.push_back(0);
  for (int k = 1; k <= nrings; ++k) {
    const double rho = mesh.ring_rho[k];
    for (int j = 0; j < rays; ++j) {
      const double th = kTwoPi * j / rays;
      mesh.vertices.push_back(center + rho * Eigen::Vector2d(std::cos(th), std::sin(th)));
      mesh.ring_of.push_back(k);
    }
  }

  mesh.metric.reserve(mesh.vertices.size());
  for (const Eigen::Vector2d& p : mesh.vertices) {
    mesh.metric.push_back(evaluate_surface(im, p).gmat);
  }

  const auto vid = [rays](int k, int j) { return 1 + (k - 1) * rays + (j % rays); };
  mesh.triangles.reserve(static_cast<std::size_t>(rays) * (2 * nrings - 1));
  for (int j = 0; j < rays; ++j) {
    mesh.triangles.push_back({0, vid(1, j), vid(1, j + 1)});
  }
  for (int k = 1; k < nrings; ++k) {
    for (int j = 0; j < rays; ++j) {
      mesh.triangles.push_back({vid(k, j), vid(k + 1, j), vid(k + 1, j + 1)});
      mesh.triangles.push_back({vid(k, j), vid(k + 1, j + 1), vid(k, j + 1)});
    }
  }
  return mesh;
}

const std::vector<double>& geodesic_distance(TriMesh& mesh, int source) {
  const int nv = static_cast<int>(mesh.vertices.size());
  if (source < 0 || source >= nv) {
    throw GeometryError("geodesic distance source vertex out of range");
  }
  std::vector<std::vector<std::pair<int, double>>> adj(nv);
  const auto add_edge = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (const auto& e : adj[a]) {
      if (e.first == b) return;
    }
    const Eigen::Vector2d d = mesh.vertices[b] - mesh.vertices[a];
    const Eigen::Matrix2d g = 0.5 * (mesh.metric[a] + mesh.metric[b]);
    const double w = std::sqrt(std::max(0.0, d.dot(g * d)));
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  };
  for (const auto& t : mesh.triangles) {
    add_edge(t[0], t[1]);
    add_edge(t[1], t[2]);
    add_edge(t[2], t[0]);
  }

  std::vector<double> dist(nv, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const auto& [w, len] : adj[v]) {
      const double nd = d + len;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  mesh.distance = std::move(dist);
  return mesh.distance;
}

HarmonicMeasure harmonic_measure(const TriMesh& mesh, int ring_r, int ring_R) {
  const int max_ring = mesh.ring_count() - 1;
  if (ring_r < 1 || ring_R <= ring_r || ring_R > max_ring) {
    throw GeometryError("harmonic measure needs rings 1 <= inner < outer within the mesh");
  }
  const int nv = static_cast<int>(mesh.vertices.size());

  HarmonicMeasure out;
  out.omega.assign(nv, 0.0);
  std::vector<int> idx(nv, -1);
  int nfree = 0;
  for (int v = 0; v < nv; ++v) {
    const int rg = mesh.ring_of[v];
    if (rg > ring_r && rg < ring_R) idx[v] = nfree++;
    if (rg >= ring_R) out.omega[v] = 1.0;
  }
  out.dofs = nfree;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(std::max(nfree, 1));
  for (const auto& t : mesh.triangles) {
    if (!triangle_in_band(mesh, t, ring_r, ring_R)) continue;
    const Eigen::Matrix3d ke = element_stiffness(mesh, t);
    for (int a = 0; a < 3; ++a) {
      const int fa = idx[t[a]];
      if (fa < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int fb = idx[t[b]];
        if (fb >= 0) {
          trips.emplace_back(fa, fb, ke(a, b));
        } else {
          rhs[fa] -= ke(a, b) * out.omega[t[b]];
        }
      }
    }
  }

  if (nfree > 0) {
    Eigen::SparseMatrix<double> a(nfree, nfree);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper>
        cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(20000);
    cg.compute(a);
    const Eigen::VectorXd x = cg.solve(rhs);
    if (cg.info() != Eigen::Success && cg.info() != Eigen::NoConvergence) {
      throw GeometryError("conjugate gradient solve failed on the annulus system");
    }
    out.iterations = static_cast<int>(cg.iterations());
    out.residual = cg.error();
    for (int v = 0; v < nv; ++v) {
      if (idx[v] >= 0) {
        out.omega[v] = x[idx[v]];
        out.min_omega = std::min(out.min_omega, out.omega[v]);
        out.max_omega = std::max(out.max_omega, out.omega[v]);
      }
    }
  } else {
    out.min_omega = 0;
    out.max_omega = 1;
  }

  double cap = 0;
  for (const auto& t : mesh.triangles) {
    if (!triangle_in_band(mesh, t, ring_r, ring_R)) continue;
    const Eigen::Matrix3d ke = element_stiffness(mesh, t);
    const Eigen::Vector3d w(out.omega[t[0]], out.omega[t[1]], out.omega[t[2]]);
    cap += w.dot(ke * w);
  }
  out.capacity = cap;
  return out;
}

CapacityResult capacity(const Immersion& im, const Eigen::Vector2d& center,
                        double r, double R, double h, RadiusMode mode) {
  if (!(r > 0) || !(R > r)) {
    throw GeometryError("capacity requires radii 0 < r < R");
  }
  const TriMesh mesh = build_mesh(im, center, R, h, mode, {r, R});
  const int ir = mesh.ring_at_radius(r, mode);
  const int iR = mesh.ring_at_radius(R, mode);
  if (ir < 0 || iR < 0) {
    throw GeometryError("requested radius did not land on a mesh ring");
  }
  const HarmonicMeasure hm = harmonic_measure(mesh, ir, iR);
  CapacityResult out;
  out.r = r;
  out.R = R;
  out.capacity = hm.capacity;
  out.dofs = hm.dofs;
  out.residual = hm.residual;
  return out;
}

ScanResult parabolicity_scan(const Immersion& im, const Eigen::Vector2d& center,
                             double r, const std::vector<double>& R_list,
                             double h, RadiusMode mode) {
  if (R_list.empty()) {
    throw GeometryError("parabolicity scan needs at least one outer radius");
  }
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    if (!(R_list[i] > r) || (i > 0 && !(R_list[i] > R_list[i - 1]))) {
      throw GeometryError("outer radii must be increasing and larger than the inner radius");
    }
  }

  ScanResult out;
  for (double R : R_list) {
    out.points.push_back(capacity(im, center, r, R, h, mode));
  }

  const int n = static_cast<int>(out.points.size());
  const double cn = out.points[n - 1].capacity;
  if (n < 2) {
    out.verdict = "indeterminate";
    out.note = "a single outer radius does not determine a trend";
    return out;
  }
  const double cp = out.points[n - 2].capacity;
  if (std::abs(cn - cp) <= 0.01 * std::max(std::abs(cn), 0.1)) {
    out.verdict = "plateau";
    out.limit_estimate = cn;
    out.note = format_note(
        "capacity settles near %.6g (last step %.2g%%); positive capacity in the "
        "limit rules out parabolicity on this window",
        cn, 100.0 * std::abs(cn - cp) / std::max(std::abs(cn), 1e-300));
    return out;
  }

  bool decreasing = true;
  for (int i = 1; i < n; ++i) {
    if (!(out.points[i].capacity < out.points[i - 1].capacity)) decreasing = false;
  }
  const double cstar = cn * std::log(out.points[n - 1].R / r);
  bool fits = decreasing;
  for (int i = n / 2; i < n && fits; ++i) {
    const double model = cstar / std::log(out.points[i].R / r);
    if (std::abs(out.points[i].capacity - model) > 0.2 * out.points[i].capacity) {
      fits = false;
    }
  }
  if (fits) {
    out.verdict = "decaying";
    out.limit_estimate = 0;
    out.note = format_note(
        "capacity decreases and its tail fits %.6g / log(R/r) within 20%%; "
        "vanishing capacity in the limit is the parabolic signature",
        cstar);
  } else {
    out.verdict = "indeterminate";
    out.limit_estimate = 0;
    out.note = "capacity sequence matches neither a plateau nor a logarithmic decay on this window";
  }
  return out;
}

EnergyBound energy_capacity_check(const Immersion& im,
                                  const Eigen::Vector2d& center, double r,
                                  double R, double h, RadiusMode mode) {
  if (!(r > 0) || !(R > r)) {
    throw GeometryError("energy bound requires radii 0 < r < R");
  }
  const TriMesh mesh = build_mesh(im, center, R, h, mode, {r, R});
  const int ir = mesh.ring_at_radius(r, mode);
  const int iR = mesh.ring_at_radius(R, mode);
  if (ir < 0 || iR < 0) {
    throw GeometryError("requested radius did not land on a mesh ring");
  }
  const HarmonicMeasure hm = harmonic_measure(mesh, ir, iR);

  EnergyBound out;
  out.cap.r = r;
  out.cap.R = R;
  out.cap.capacity = hm.capacity;
  out.cap.dofs = hm.dofs;
  out.cap.residual = hm.residual;

  const int nv = static_cast<int>(mesh.vertices.size());
  Eigen::VectorXd uv(nv);
  for (int v = 0; v < nv; ++v) {
    uv[v] = evaluate_surface(im, mesh.vertices[v]).u.v;
  }
  out.sup_u = uv.maxCoeff();

  // P1 Dirichlet energy of the interpolated u over the inner ball.
  double lhs = 0;
  for (const auto& t : mesh.triangles) {
    if (!triangle_in_band(mesh, t, 0, ir)) continue;
    const Eigen::Matrix3d ke = element_stiffness(mesh, t);
    const Eigen::Vector3d w(uv[t[0]], uv[t[1]], uv[t[2]]);
    lhs += w.dot(ke * w);
  }
  out.lhs = lhs;
  out.rhs = 4.0 * out.sup_u * out.sup_u * hm.capacity * out.slack_factor;
  out.slack = out.rhs - out.lhs;

  // Sample u * (Laplacian of u) on a coarse vertex subset.
  const int nrings = mesh.ring_count() - 1;
  const int ring_step = std::max(1, nrings / 8);
  const int ray_step = std::max(1, mesh.rays / 16);
  double min_q = std::numeric_limits<double>::infinity();
  double max_abs_q = 0;
  const auto probe = [&](const Eigen::Vector2d& p) {
    const SurfaceEval ev = evaluate_surface(im, p);
    const double q = ev.u.v * laplace_beltrami(ev, ev.u).lap;
    min_q = std::min(min_q, q);
    max_abs_q = std::max(max_abs_q, std::abs(q));
  };
  probe(mesh.vertices[0]);
  for (int k = ring_step; k <= nrings; k += ring_step) {
    for (int j = 0; j < mesh.rays; j += ray_step) {
      probe(mesh.vertices[1 + (k - 1) * mesh.rays + j]);
    }
  }
  out.min_u_lap_u = min_q;
  out.precondition_ok = min_q >= -1e-6 * std::max(1.0, max_abs_q);
  if (out.precondition_ok) {
    out.note = format_note(
        "u * (Laplacian of u) >= %.3g on the sample, so the energy bound's "
        "hypothesis holds",
        min_q);
  } else {
    out.note = format_note(
        "u * (Laplacian of u) reaches %.3g on the sample, so the bound's "
        "hypothesis fails there; both sides are reported for reference",
        min_q);
  }
  return out;
}

}  // namespace grw
