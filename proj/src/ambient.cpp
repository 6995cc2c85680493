#include "grw/ambient.hpp"

#include <cmath>

namespace grw {

WarpingFunction make_warping(std::string_view text, double t_min, double t_max) {
  WarpingFunction w;
  w.expr = parse_expr(text, {"t"});
  if (!(t_min < t_max)) throw GeometryError("warping interval is empty");
  w.t_min = t_min;
  w.t_max = t_max;
  return w;
}

WarpValues warp_eval(const WarpingFunction& w, double t) {
  if (!(t > w.t_min && t < w.t_max))
    throw GeometryError("time coordinate outside the warping interval");
  Jet3 tj = jet_var(0, t);
  Jet3 r = eval_jet(w.expr, std::span<const Jet3>(&tj, 1));
  if (!(r.v > 0.0)) throw GeometryError("warping function must be positive");
  return {r.v, r.g[0], r.h[0]};
}

Jet3 warp_jet(const WarpingFunction& w, const Jet3& tau) {
  if (!(tau.v > w.t_min && tau.v < w.t_max))
    throw GeometryError("time coordinate outside the warping interval");
  Jet3 r = eval_jet(w.expr, std::span<const Jet3>(&tau, 1));
  if (!(r.v > 0.0)) throw GeometryError("warping function must be positive");
  return r;
}

FiberModel make_fiber(FiberKind kind, int dim, double curvature) {
  if (dim < 2) throw GeometryError("fiber dimension must be at least 2");
  switch (kind) {
    case FiberKind::Euclidean:
      if (curvature != 0.0) throw GeometryError("Euclidean fiber needs curvature 0");
      break;
    case FiberKind::Sphere:
      if (!(curvature > 0.0)) throw GeometryError("spherical fiber needs curvature > 0");
      break;
    case FiberKind::Hyperbolic:
      if (!(curvature < 0.0)) throw GeometryError("hyperbolic fiber needs curvature < 0");
      break;
  }
  return {kind, dim, curvature};
}

double conformal_lambda(const FiberModel& fiber, const Eigen::VectorXd& p) {
  if (p.size() != fiber.dim) throw GeometryError("fiber point has the wrong dimension");
  const double c = fiber.curvature;
  const double den = 1.0 + 0.25 * c * p.squaredNorm();
  if (c != 0.0 && p.squaredNorm() >= 4.0 / std::abs(c))
    throw GeometryError("fiber point outside the conformal chart");
  return 1.0 / den;
}

GRWSpacetime make_spacetime(WarpingFunction warping, FiberModel fiber) {
  GRWSpacetime st;
  double cval = 0.0;
  st.is_static = expr_is_constant(warping.expr, &cval) && cval == 1.0;
  st.warping = std::move(warping);
  st.fiber = fiber;
  return st;
}

namespace {

// Splits an ambient point into (t, fiber part) with dimension checks.
void split_point(const GRWSpacetime& st, const Eigen::VectorXd& x, double* t,
                 Eigen::VectorXd* p) {
  if (x.size() != st.n()) throw GeometryError("ambient point has the wrong dimension");
  *t = x[0];
  *p = x.tail(st.fiber.dim);
}

}  // namespace

Eigen::MatrixXd metric_at(const GRWSpacetime& st, const Eigen::VectorXd& x) {
  double t;
  Eigen::VectorXd p;
  split_point(st, x, &t, &p);
  const double f = warp_eval(st.warping, t).f;
  const double lam = conformal_lambda(st.fiber, p);
  const int n = st.n();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  g(0, 0) = -1.0;
  const double s = f * f * lam * lam;
  for (int i = 1; i < n; ++i) g(i, i) = s;
  return g;
}

double ambient_inner(const GRWSpacetime& st, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::MatrixXd g = metric_at(st, x);
  return a.dot(g * b);
}

std::vector<Eigen::MatrixXd> connection_coeffs_at(const GRWSpacetime& st,
                                                  const Eigen::VectorXd& x) {
  double t;
  Eigen::VectorXd p;
  split_point(st, x, &t, &p);
  const WarpValues w = warp_eval(st.warping, t);
  const double lam = conformal_lambda(st.fiber, p);
  const double c = st.fiber.curvature;
  const int n = st.n();
  const int m = st.fiber.dim;

  // d_i log(lambda) over fiber coordinates
  Eigen::VectorXd L(m);
  for (int i = 0; i < m; ++i) L[i] = -0.5 * c * p[i] * lam;

  std::vector<Eigen::MatrixXd> gamma(static_cast<size_t>(n),
                                     Eigen::MatrixXd::Zero(n, n));
  const double ffp_lam2 = w.f * w.fp * lam * lam;
  const double fp_over_f = w.fp / w.f;
  for (int i = 1; i < n; ++i) {
    gamma[0](i, i) = ffp_lam2;            // Gamma^0_ij = f f' lambda^2 delta_ij
    gamma[static_cast<size_t>(i)](0, i) = fp_over_f;  // Gamma^i_0i = f'/f
    gamma[static_cast<size_t>(i)](i, 0) = fp_over_f;
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      for (int k = 1; k < n; ++k) {
        double v = 0.0;
        if (i == j) v += L[k - 1];
        if (i == k) v += L[j - 1];
        if (j == k) v -= L[i - 1];
        gamma[static_cast<size_t>(i)](j, k) += v;
      }
    }
  }
  return gamma;
}

double ambient_sectional(const GRWSpacetime& st, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const int n = st.n();
  if (X.size() != n || Y.size() != n)
    throw GeometryError("sectional curvature: vector has the wrong dimension");

  // dGamma[i][k](j,l) ~ d_i Gamma^k_jl, Richardson-extrapolated central
  // differences with base step h (leading error O(h^4)).
  const double h = 1e-4;
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(
      static_cast<size_t>(n),
      std::vector<Eigen::MatrixXd>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    auto diff = [&](double step) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      std::vector<Eigen::MatrixXd> gp = connection_coeffs_at(st, xp);
      std::vector<Eigen::MatrixXd> gm = connection_coeffs_at(st, xm);
      std::vector<Eigen::MatrixXd> d(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) d[static_cast<size_t>(k)] = (gp[static_cast<size_t>(k)] - gm[static_cast<size_t>(k)]) / (2.0 * step);
      return d;
    };
    std::vector<Eigen::MatrixXd> d1 = diff(2.0 * h);
    std::vector<Eigen::MatrixXd> d2 = diff(h);
    for (int k = 0; k < n; ++k)
      dgamma[static_cast<size_t>(i)][static_cast<size_t>(k)] =
          (4.0 * d2[static_cast<size_t>(k)] - d1[static_cast<size_t>(k)]) / 3.0;
  }

  std::vector<Eigen::MatrixXd> gam = connection_coeffs_at(st, x);
  Eigen::MatrixXd g = metric_at(st, x);

  // R(e_i, e_j) e_k = R^l_kij e_l
  auto riemann = [&](int l, int k, int i, int j) {
    double r = dgamma[static_cast<size_t>(i)][static_cast<size_t>(l)](j, k) -
               dgamma[static_cast<size_t>(j)][static_cast<size_t>(l)](i, k);
    for (int m = 0; m < n; ++m)
      r += gam[static_cast<size_t>(l)](i, m) * gam[static_cast<size_t>(m)](j, k) -
           gam[static_cast<size_t>(l)](j, m) * gam[static_cast<size_t>(m)](i, k);
    return r;
  };

  // <R(X,Y)Y, X>
  double num = 0.0;
  for (int l = 0; l < n; ++l) {
    double rl = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double w = Y[k] * X[i] * Y[j];
          if (w != 0.0) rl += riemann(l, k, i, j) * w;
        }
    num += g(l, l) * X[l] * rl;  // metric is diagonal
  }

  const double xx = X.dot(g * X), yy = Y.dot(g * Y), xy = X.dot(g * Y);
  const double q = xx * yy - xy * xy;
  if (std::abs(q) < 1e-14)
    throw GeometryError("sectional curvature of a degenerate plane");
  return num / q;
}

}  // namespace grw
