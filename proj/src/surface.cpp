#include "grw/surface.hpp"

#include <cmath>

namespace grw {

bool Domain::contains(const Eigen::Vector2d& p) const {
  if (kind == Kind::Rect)
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  return (p - center).norm() <= radius;
}

Domain Domain::rect(double x0, double y0, double x1, double y1) {
  Domain d;
  d.kind = Kind::Rect;
  d.x0 = x0;
  d.y0 = y0;
  d.x1 = x1;
  d.y1 = y1;
  return d;
}

Domain Domain::disk(const Eigen::Vector2d& c, double r) {
  Domain d;
  d.kind = Kind::Disk;
  d.center = c;
  d.radius = r;
  return d;
}

Immersion make_immersion(std::vector<std::string> component_texts, Domain domain,
                         std::shared_ptr<const GRWSpacetime> st) {
  if (!st) throw GeometryError("immersion needs a spacetime");
  if (static_cast<int>(component_texts.size()) != st->n())
    throw GeometryError("immersion component count must match the ambient dimension");
  if (st->n() < 3) throw GeometryError("ambient dimension must be at least 3");
  Immersion im;
  for (const std::string& text : component_texts)
    im.components.push_back(parse_expr(text, {"x", "y"}));
  im.domain = domain;
  im.spacetime = std::move(st);
  return im;
}

std::vector<Jet3> evaluate_jets(const Immersion& im, const Eigen::Vector2d& p) {
  if (!im.domain.contains(p)) throw GeometryError("parameter point outside the domain");
  std::array<Jet3, 2> env = {jet_var(0, p.x()), jet_var(1, p.y())};
  std::vector<Jet3> X;
  X.reserve(im.components.size());
  for (const ExprAst& c : im.components)
    X.push_back(eval_jet(c, std::span<const Jet3>(env.data(), 2)));
  return X;
}

SurfaceEval evaluate_surface(const Immersion& im, const Eigen::Vector2d& p) {
  const GRWSpacetime& st = *im.spacetime;
  const int n = im.n();

  SurfaceEval ev;
  ev.p = p;
  ev.spacetime = im.spacetime;
  ev.X = evaluate_jets(im, p);
  ev.tau = ev.X[0];
  ev.fj = warp_jet(st.warping, ev.tau);
  {
    WarpValues wv = warp_eval(st.warping, ev.tau.v);
    ev.f = wv.f;
    ev.fp = wv.fp;
    ev.fpp = wv.fpp;
  }

  // chart check for the fiber point
  Eigen::VectorXd fiber_pt(n - 1);
  for (int i = 1; i < n; ++i) fiber_pt[i - 1] = ev.X[static_cast<size_t>(i)].v;
  const double lam = conformal_lambda(st.fiber, fiber_pt);

  // conformal factor squared as a jet
  Jet3 lam2;
  if (st.fiber.curvature == 0.0) {
    lam2 = jet_const(1.0);
  } else {
    Jet3 s2 = jet_const(0.0);
    for (int i = 1; i < n; ++i) s2 = s2 + ev.X[static_cast<size_t>(i)] * ev.X[static_cast<size_t>(i)];
    Jet3 den = 1.0 + 0.25 * st.fiber.curvature * s2;
    lam2 = 1.0 / (den * den);
  }
  Jet3 w2 = ev.fj * ev.fj * lam2;  // f(tau)^2 lambda^2, order 3 in x,y

  // partial-derivative jets of the components (valid to order 2)
  std::vector<Jet3> Xa(static_cast<size_t>(n)), Xb(static_cast<size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    Xa[static_cast<size_t>(mu)] = jet_demote(ev.X[static_cast<size_t>(mu)], 0);
    Xb[static_cast<size_t>(mu)] = jet_demote(ev.X[static_cast<size_t>(mu)], 1);
  }

  auto metric_entry = [&](const std::vector<Jet3>& A, const std::vector<Jet3>& B) {
    Jet3 fib = jet_const(0.0);
    for (int i = 1; i < n; ++i) fib = fib + A[static_cast<size_t>(i)] * B[static_cast<size_t>(i)];
    return jet_const(0.0) - A[0] * B[0] + w2 * fib;
  };
  ev.g00 = metric_entry(Xa, Xa);
  ev.g01 = metric_entry(Xa, Xb);
  ev.g11 = metric_entry(Xb, Xb);

  ev.detg = ev.g00 * ev.g11 - ev.g01 * ev.g01;
  if (!(ev.detg.v > 0.0) || !(ev.g00.v > 0.0))
    throw GeometryError("induced metric is not positive definite (surface not spacelike)");
  ev.gi00 = ev.g11 / ev.detg;
  ev.gi01 = jet_const(0.0) - ev.g01 / ev.detg;
  ev.gi11 = ev.g00 / ev.detg;

  // |grad tau|^2 and u = f(tau)^2 (1 + |grad tau|^2), valid to order 2
  Jet3 ta = Xa[0], tb = Xb[0];
  Jet3 gradtau2 = ev.gi00 * ta * ta + 2.0 * (ev.gi01 * ta * tb) + ev.gi11 * tb * tb;
  ev.u = ev.fj * ev.fj * (1.0 + gradtau2);

  ev.gmat << ev.g00.v, ev.g01.v, ev.g01.v, ev.g11.v;
  ev.tangent.resize(n, 2);
  for (int mu = 0; mu < n; ++mu) {
    ev.tangent(mu, 0) = Xa[static_cast<size_t>(mu)].v;
    ev.tangent(mu, 1) = Xb[static_cast<size_t>(mu)].v;
  }
  ev.metric_scale = ev.f * ev.f * lam * lam;
  return ev;
}

Eigen::Matrix2d induced_metric(const Immersion& im, const Eigen::Vector2d& p) {
  return evaluate_surface(im, p).gmat;
}

namespace {

// ambient inner product with the diagonal metric at the evaluation point
double ipoint(const SurfaceEval& ev, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = -a[0] * b[0];
  for (int i = 1; i < a.size(); ++i) s += ev.metric_scale * a[i] * b[i];
  return s;
}

}  // namespace

TDecomposition decompose_T(const SurfaceEval& ev) {
  const int n = static_cast<int>(ev.X.size());
  TDecomposition td;
  td.T = Eigen::VectorXd::Zero(n);
  td.T[0] = ev.f;

  // <T, d_a X> = -f tau_a; tangential part via the inverse induced metric
  const double ta = ev.tangent(0, 0), tb = ev.tangent(0, 1);
  Eigen::Vector2d rhs(-ev.f * ta, -ev.f * tb);
  Eigen::Vector2d coef = ev.gmat.inverse() * rhs;
  td.T_tan = coef[0] * ev.tangent.col(0) + coef[1] * ev.tangent.col(1);
  td.T_nor = td.T - td.T_tan;
  td.T_tan_sq = ipoint(ev, td.T_tan, td.T_tan);
  td.u = -ipoint(ev, td.T_nor, td.T_nor);
  if (!(td.u > 0.0)) throw GeometryError("u must be positive on a spacelike surface");
  return td;
}

PointFrame normal_frame(const SurfaceEval& ev) {
  const int n = static_cast<int>(ev.X.size());
  PointFrame fr;

  // orthonormal tangent frame from the parameter directions
  const Eigen::VectorXd tx = ev.tangent.col(0), ty = ev.tangent.col(1);
  const double n1 = ipoint(ev, tx, tx);
  if (!(n1 > 0.0)) throw GeometryError("tangent direction is not spacelike");
  const double in1 = 1.0 / std::sqrt(n1);
  Eigen::VectorXd E1 = tx * in1;
  const double proj = ipoint(ev, ty, E1);
  Eigen::VectorXd w = ty - proj * E1;
  const double n2 = ipoint(ev, w, w);
  if (!(n2 > 0.0)) throw GeometryError("tangent plane is degenerate");
  Eigen::VectorXd E2 = w / std::sqrt(n2);

  fr.coeff << in1, -proj * in1 / std::sqrt(n2), 0.0, 1.0 / std::sqrt(n2);
  fr.E.resize(n, 2);
  fr.E.col(0) = E1;
  fr.E.col(1) = E2;

  TDecomposition td = decompose_T(ev);
  fr.xi_time = td.T_nor / std::sqrt(td.u);
  // <xi_time, d_t> = <T_nor, T>/ (f sqrt(u)) = -u / (f sqrt(u)) < 0 holds by
  // construction; keep a guard for the orientation contract.
  if (!(-fr.xi_time[0] < 0.0))
    throw GeometryError("timelike normal has the wrong time orientation");

  // remaining spacelike normals: project coordinate directions off the span
  // of {E1, E2, xi_time} (+ previously selected), pivoting on the largest
  // residual norm; candidate order is the fixed coordinate order.
  const int extra = n - 3;
  fr.xi_space.resize(n, extra);
  std::vector<Eigen::VectorXd> chosen;
  auto residual = [&](int mu) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[mu] = 1.0;
    v -= ipoint(ev, v, E1) * E1;
    v -= ipoint(ev, v, E2) * E2;
    v += ipoint(ev, v, fr.xi_time) * fr.xi_time;  // timelike: epsilon = -1
    for (const Eigen::VectorXd& xi : chosen) v -= ipoint(ev, v, xi) * xi;
    return v;
  };
  for (int slot = 0; slot < extra; ++slot) {
    int best = -1;
    double best_norm = 0.0;
    Eigen::VectorXd best_vec;
    for (int mu = 0; mu < n; ++mu) {
      Eigen::VectorXd r = residual(mu);
      const double rn = ipoint(ev, r, r);
      if (rn > best_norm) {
        best_norm = rn;
        best = mu;
        best_vec = r;
      }
    }
    if (best < 0 || std::sqrt(best_norm) < 1e-12)
      throw GeometryError("degenerate normal frame (Gram-Schmidt residual too small)");
    chosen.push_back(best_vec / std::sqrt(best_norm));
    fr.xi_space.col(slot) = chosen.back();
  }
  return fr;
}

SecondFundamental second_fundamental(const SurfaceEval& ev, const PointFrame& fr) {
  const int n = static_cast<int>(ev.X.size());
  const GRWSpacetime& st = *ev.spacetime;

  Eigen::VectorXd pt(n);
  for (int mu = 0; mu < n; ++mu) pt[mu] = ev.X[static_cast<size_t>(mu)].v;
  const std::vector<Eigen::MatrixXd> gamma = connection_coeffs_at(st, pt);

  // sigma(d_a, d_b) = normal part of (d_a d_b X + Gamma contraction)
  std::array<Eigen::VectorXd, 3> sp;  // parameter-frame entries xx, xy, yy
  const int pairs[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int k = 0; k < 3; ++k) {
    const int a = pairs[k][0], b = pairs[k][1];
    Eigen::VectorXd raw(n);
    for (int mu = 0; mu < n; ++mu) {
      double v = ev.X[static_cast<size_t>(mu)].hess(a, b);
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          v += gamma[static_cast<size_t>(mu)](nu, rho) * ev.tangent(nu, a) *
               ev.tangent(rho, b);
      raw[mu] = v;
    }
    raw -= ipoint(ev, raw, fr.E.col(0)) * fr.E.col(0);
    raw -= ipoint(ev, raw, fr.E.col(1)) * fr.E.col(1);
    sp[static_cast<size_t>(k)] = raw;
  }

  // change of frame: sigma(E_a, E_b) = sum coeff(al,a) coeff(be,b) sigma(d_al, d_be)
  auto param = [&](int al, int be) -> const Eigen::VectorXd& {
    return sp[static_cast<size_t>(al + be)];
  };
  SecondFundamental sf;
  const int idx[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int k = 0; k < 3; ++k) {
    const int a = idx[k][0], b = idx[k][1];
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        s += fr.coeff(al, a) * fr.coeff(be, b) * param(al, be);
    sf.sigma[static_cast<size_t>(k)] = s;
  }
  sf.H = 0.5 * (sf.sigma[0] + sf.sigma[2]);
  return sf;
}

Eigen::Matrix2d weingarten(const SurfaceEval& ev, const PointFrame& fr,
                           const SecondFundamental& sf, const TDecomposition& td,
                           NormalSelector sel) {
  Eigen::VectorXd xi;
  switch (sel.which) {
    case NormalSelector::Which::TimelikeRaw:
      xi = td.T_nor;
      break;
    case NormalSelector::Which::TimelikeUnit:
      xi = fr.xi_time;
      break;
    case NormalSelector::Which::Spacelike:
      if (sel.index < 0 || sel.index >= fr.xi_space.cols())
        throw GeometryError("spacelike normal index out of range");
      xi = fr.xi_space.col(sel.index);
      break;
  }
  Eigen::Matrix2d M;
  M << ipoint(ev, sf.sigma[0], xi), ipoint(ev, sf.sigma[1], xi),
       ipoint(ev, sf.sigma[1], xi), ipoint(ev, sf.sigma[2], xi);
  return M;
}

double gauss_curvature_intrinsic(const SurfaceEval& ev) {
  const double E = ev.g00.v, F = ev.g01.v, G = ev.g11.v;
  const double Ex = ev.g00.g[0], Ey = ev.g00.g[1];
  const double Fx = ev.g01.g[0], Fy = ev.g01.g[1];
  const double Gx = ev.g11.g[0], Gy = ev.g11.g[1];
  const double Eyy = ev.g00.h[2], Gxx = ev.g11.h[0], Fxy = ev.g01.h[1];

  Eigen::Matrix3d M1, M2;
  M1 << -0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey,
        Fy - 0.5 * Gx, E, F,
        0.5 * Gy, F, G;
  M2 << 0.0, 0.5 * Ey, 0.5 * Gx,
        0.5 * Ey, E, F,
        0.5 * Gx, F, G;
  const double det = E * G - F * F;
  return (M1.determinant() - M2.determinant()) / (det * det);
}

double gauss_curvature_intrinsic(const Immersion& im, const Eigen::Vector2d& p) {
  return gauss_curvature_intrinsic(evaluate_surface(im, p));
}

ScalarField laplace_beltrami(const SurfaceEval& ev, const Jet3& scalar,
                             const PointFrame* fr) {
  ScalarField out;
  out.value = scalar.v;

  Jet3 sa = jet_demote(scalar, 0), sb = jet_demote(scalar, 1);
  Jet3 sq = jet_sqrt(ev.detg);
  Jet3 w0 = sq * (ev.gi00 * sa + ev.gi01 * sb);
  Jet3 w1 = sq * (ev.gi01 * sa + ev.gi11 * sb);
  out.lap = (w0.g[0] + w1.g[1]) / sq.v;

  const double da = sa.v, db = sb.v;
  out.grad_sq = ev.gi00.v * da * da + 2.0 * ev.gi01.v * da * db + ev.gi11.v * db * db;
  if (fr != nullptr) {
    // directional derivatives along the orthonormal frame
    out.grad_frame[0] = fr->coeff(0, 0) * da + fr->coeff(1, 0) * db;
    out.grad_frame[1] = fr->coeff(0, 1) * da + fr->coeff(1, 1) * db;
  }
  return out;
}

namespace {

// squared frame-Euclidean magnitude of a normal vector: sum of squared
// components over the orthonormal normal frame (timelike included), so the
// result vanishes exactly when the vector does
double normal_mag_sq(const SurfaceEval& ev, const PointFrame& fr,
                     const Eigen::VectorXd& v) {
  double s = 0.0;
  const double ct = ipoint(ev, v, fr.xi_time);
  s += ct * ct;
  for (int i = 0; i < fr.xi_space.cols(); ++i) {
    const double c = ipoint(ev, v, fr.xi_space.col(i));
    s += c * c;
  }
  return s;
}

}  // namespace

ExtrinsicReport extrinsic_report(const Immersion& im, const Eigen::Vector2d& p) {
  SurfaceEval ev = evaluate_surface(im, p);
  TDecomposition td = decompose_T(ev);
  PointFrame fr = normal_frame(ev);
  SecondFundamental sf = second_fundamental(ev, fr);
  const GRWSpacetime& st = *ev.spacetime;

  ExtrinsicReport r;
  r.p = p;
  r.u = td.u;
  r.T_tan = td.T_tan;
  r.T_nor = td.T_nor;
  r.T_tan_frame[0] = ipoint(ev, td.T_tan, fr.E.col(0));
  r.T_tan_frame[1] = ipoint(ev, td.T_tan, fr.E.col(1));
  r.T_tan_sq = td.T_tan_sq;

  const double ta = ev.tangent(0, 0), tb = ev.tangent(0, 1);
  r.grad_tau_sq = ev.gi00.v * ta * ta + 2.0 * ev.gi01.v * ta * tb +
                  ev.gi11.v * tb * tb;

  r.sigma = sf.sigma;
  r.H = sf.H;
  r.H_mag = std::sqrt(normal_mag_sq(ev, fr, sf.H));
  r.sigma_mag = std::sqrt(normal_mag_sq(ev, fr, sf.sigma[0]) +
                          2.0 * normal_mag_sq(ev, fr, sf.sigma[1]) +
                          normal_mag_sq(ev, fr, sf.sigma[2]));

  r.A_time = weingarten(ev, fr, sf, td, {NormalSelector::Which::TimelikeRaw, 0});
  r.tr_A2_time = (r.A_time * r.A_time).trace();
  const int extra = static_cast<int>(fr.xi_space.cols());
  r.sum_tr_A2_space = 0.0;
  for (int i = 0; i < extra; ++i) {
    Eigen::Matrix2d A =
        weingarten(ev, fr, sf, td, {NormalSelector::Which::Spacelike, i});
    r.A_space.push_back(A);
    r.tr_A2_space.push_back((A * A).trace());
    r.sum_tr_A2_space += r.tr_A2_space.back();
  }

  const double f = ev.f, fp = ev.fp, fpp = ev.fpp, u = td.u;
  const double km = st.fiber.curvature;
  r.Kbar = fpp / f + (fp * fp - fpp * f) / (f * f * f * f) * u +
           (u / (f * f * f * f)) * km;
  r.Kbar_fd = ambient_sectional(st, [&] {
    Eigen::VectorXd pt(im.n());
    for (int mu = 0; mu < im.n(); ++mu) pt[mu] = ev.X[static_cast<size_t>(mu)].v;
    return pt;
  }(), fr.E.col(0), fr.E.col(1));
  r.K_intrinsic = gauss_curvature_intrinsic(ev);
  r.K_gauss = r.Kbar - 0.5 * r.sum_tr_A2_space + (0.5 / u) * r.tr_A2_time;

  ScalarField su = laplace_beltrami(ev, ev.u, &fr);
  r.grad_u_frame = su.grad_frame;
  r.grad_u_sq = su.grad_sq;
  r.lap_u = su.lap;
  r.lap_log_u = laplace_beltrami(ev, jet_log(ev.u)).lap;

  r.tau = ev.tau.v;
  r.f = f;
  r.fp = fp;
  r.fpp = fpp;
  return r;
}

}  // namespace grw
