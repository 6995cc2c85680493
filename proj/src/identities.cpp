#include "grw/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace grw {

double scaled_residual(double lhs, double rhs) {
  const double m = std::max(std::abs(lhs), std::abs(rhs));
  return std::abs(lhs - rhs) / std::max(1.0, m / 10.0);
}

std::vector<Eigen::Vector2d> sample_grid(const Immersion& im, int n, double frac) {
  if (n < 2) throw GeometryError("sample grid needs n >= 2");
  std::vector<Eigen::Vector2d> pts;
  const Domain& d = im.domain;
  if (d.kind == Domain::Kind::Rect) {
    const double cx = 0.5 * (d.x0 + d.x1), cy = 0.5 * (d.y0 + d.y1);
    const double hx = 0.5 * frac * (d.x1 - d.x0), hy = 0.5 * frac * (d.y1 - d.y0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pts.emplace_back(cx - hx + 2.0 * hx * i / (n - 1),
                         cy - hy + 2.0 * hy * j / (n - 1));
  } else {
    pts.emplace_back(d.center);
    const double offset = 0.1;  // keep rays off the symmetry axes
    for (int i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      const double r = frac * d.radius * t * t;
      for (int j = 0; j < n; ++j) {
        const double a = offset + 2.0 * M_PI * j / n;
        pts.emplace_back(d.center.x() + r * std::cos(a),
                         d.center.y() + r * std::sin(a));
      }
    }
  }
  return pts;
}

namespace {

struct Sample {
  std::vector<Eigen::Vector2d> pts;
  std::vector<ExtrinsicReport> reps;
  double max_h = 0;
  Eigen::Vector2d max_h_at{0, 0};
  double u_min = 0, u_max = 0;
};

Sample collect(const Immersion& im, const CheckOptions& opt) {
  Sample s;
  s.pts = sample_grid(im, opt.grid, opt.frac);
  s.reps.reserve(s.pts.size());
  s.u_min = std::numeric_limits<double>::infinity();
  s.u_max = -s.u_min;
  for (const Eigen::Vector2d& p : s.pts) {
    s.reps.push_back(extrinsic_report(im, p));
    const ExtrinsicReport& r = s.reps.back();
    if (r.H_mag > s.max_h) {
      s.max_h = r.H_mag;
      s.max_h_at = p;
    }
    s.u_min = std::min(s.u_min, r.u);
    s.u_max = std::max(s.u_max, r.u);
  }
  return s;
}

std::string point_str(const Eigen::Vector2d& p) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

bool is_stationary(const Sample& s, const CheckOptions& opt) {
  return s.max_h <= opt.stationary_tol;
}

void require_stationary(const Sample& s, const CheckOptions& opt,
                        const std::string& check) {
  if (!is_stationary(s, opt)) {
    std::ostringstream os;
    os << check << ": requires a stationary surface, but max |H| = " << s.max_h
       << " at " << point_str(s.max_h_at);
    throw PreconditionError(os.str());
  }
}

bool is_constant_u(const Sample& s, const CheckOptions& opt) {
  const double scale = std::max(1.0, std::abs(s.u_max) / 10.0);
  return (s.u_max - s.u_min) <= 10.0 * opt.tol * scale;
}

struct Worst {
  double residual = 0;
  double lhs = 0, rhs = 0;
  Eigen::Vector2d at{0, 0};
  void add(double l, double r, const Eigen::Vector2d& p) {
    const double sr = scaled_residual(l, r);
    if (sr >= residual) {
      residual = sr;
      lhs = l;
      rhs = r;
      at = p;
    }
  }
};

ResidualReport finish(const std::string& name, const Worst& w, double tol,
                      int points, std::string note = {}) {
  ResidualReport rep;
  rep.check = name;
  rep.residual = w.residual;
  rep.tol = tol;
  rep.lhs = w.lhs;
  rep.rhs = w.rhs;
  rep.worst_point = w.at;
  rep.points = points;
  rep.pass = w.residual <= tol;
  rep.note = std::move(note);
  return rep;
}

ResidualReport gradient_impl(const Sample& s, const CheckOptions& opt) {
  Worst w;
  const bool stat = is_stationary(s, opt);
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const Eigen::Vector2d& p = s.pts[i];
    // u = f^2 + |T_tan|^2
    w.add(r.u, r.f * r.f + r.T_tan_sq, p);
    // grad u = 2 A_{T_nor} T_tan, componentwise in the orthonormal frame
    const Eigen::Vector2d rhs_vec = 2.0 * (r.A_time * r.T_tan_frame);
    w.add(r.grad_u_frame[0], rhs_vec[0], p);
    w.add(r.grad_u_frame[1], rhs_vec[1], p);
    // |grad u|^2 = 4 <A^2 T_tan, T_tan>
    const double quad =
        4.0 * r.T_tan_frame.dot((r.A_time * r.A_time) * r.T_tan_frame);
    w.add(r.grad_u_sq, quad, p);
    if (stat) {
      // trace form, valid because A_{T_nor} is traceless here
      w.add(r.grad_u_sq, 2.0 * r.tr_A2_time * r.T_tan_sq, p);
    }
  }
  return finish("gradient", w, opt.tol, static_cast<int>(s.pts.size()),
                stat ? "vector, quadratic and stationary trace forms"
                     : "vector and quadratic forms (trace form skipped: "
                       "surface is not stationary)");
}

ResidualReport laplacian_impl(const Sample& s, const CheckOptions& opt) {
  Worst w;
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double rhs = 2.0 * (r.K_intrinsic - r.fpp / r.f) * r.T_tan_sq +
                       2.0 * r.tr_A2_time;
    w.add(r.lap_u, rhs, s.pts[i]);
  }
  return finish("laplacian", w, opt.tol, static_cast<int>(s.pts.size()));
}

ResidualReport dlog_warp_impl(const Sample& s, const CheckOptions& opt) {
  Worst w;
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double kw = r.K_intrinsic - r.fpp / r.f;
    const double f2 = r.f * r.f;
    const double rhs = 2.0 * kw - (2.0 * f2 / (r.u * r.u)) * (kw * r.u - r.tr_A2_time);
    w.add(r.lap_log_u, rhs, s.pts[i]);
  }
  return finish("dlogu_warp", w, opt.tol, static_cast<int>(s.pts.size()));
}

ResidualReport dlog_fiber_impl(const Sample& s, const CheckOptions& opt,
                               double k_fiber) {
  Worst w;
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double f2 = r.f * r.f;
    const double kf = r.K_intrinsic - (r.fp * r.fp + k_fiber) / f2;
    const double rhs =
        2.0 * kf +
        (f2 / (r.u * r.u)) * (r.tr_A2_time + r.u * r.sum_tr_A2_space);
    w.add(r.lap_log_u, rhs, s.pts[i]);
  }
  return finish("dlogu_fiber", w, opt.tol, static_cast<int>(s.pts.size()));
}

ResidualReport dlog_constu_impl(const Sample& s, const CheckOptions& opt,
                                double k_fiber) {
  ResidualReport rep;
  rep.check = "dlogu_constu";
  rep.tol = opt.tol;
  rep.points = static_cast<int>(s.pts.size());
  double max_q = -std::numeric_limits<double>::infinity();
  double max_abs_q = 0;
  double max_sigma = 0;
  Eigen::Vector2d at{0, 0};
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double q =
        r.K_intrinsic - (r.fp * r.fp + k_fiber) / (r.f * r.f);
    if (q > max_q) {
      max_q = q;
      at = s.pts[i];
      rep.lhs = r.K_intrinsic;
      rep.rhs = (r.fp * r.fp + k_fiber) / (r.f * r.f);
    }
    max_abs_q = std::max(max_abs_q, std::abs(q));
    max_sigma = std::max(max_sigma, r.sigma_mag);
  }
  rep.worst_point = at;
  rep.residual = std::max(max_q, 0.0);
  const bool geodesic = max_sigma <= 10.0 * opt.stationary_tol;
  const bool equality = max_abs_q <= 10.0 * opt.tol;
  const bool consistent = geodesic == equality;
  rep.pass = (max_q <= opt.tol) && consistent;
  std::ostringstream os;
  os << "max of K - (f'^2+K_M)/f^2 = " << max_q << "; max |sigma| = " << max_sigma
     << "; equality and total geodesy "
     << (consistent ? "agree" : "DISAGREE");
  rep.note = os.str();
  return rep;
}

ResidualReport sectional_impl(const Sample& s, const CheckOptions& opt) {
  Worst w;
  for (size_t i = 0; i < s.reps.size(); ++i)
    w.add(s.reps[i].Kbar, s.reps[i].Kbar_fd, s.pts[i]);
  return finish("sectional", w, opt.tol_sectional,
                static_cast<int>(s.pts.size()));
}

ResidualReport gauss_impl(const Sample& s, const CheckOptions& opt,
                          double k_fiber) {
  Worst w;
  Worst diag;  // alternative display form, kept as a diagnostic only
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    w.add(r.K_intrinsic, r.K_gauss, s.pts[i]);
    const double f2 = r.f * r.f;
    const double logf_dd = r.fpp / r.f - (r.fp * r.fp) / f2;
    const double variant = (r.fp * r.fp + k_fiber) / f2 +
                           (k_fiber / f2 - logf_dd) * r.grad_tau_sq +
                           (0.5 / r.u) * r.sum_tr_A2_space -
                           0.5 * r.sum_tr_A2_space - r.fpp / r.f;
    diag.add(r.K_intrinsic, variant, s.pts[i]);
  }
  std::ostringstream os;
  os << "diagnostic: the variant display with the 1/(2u) slot holding the "
        "spacelike-normal trace sum and a trailing -f''/f term deviates by "
     << diag.residual << " at " << point_str(diag.at)
     << " (that variant is inconsistent; the assembled form is authoritative)";
  return finish("gauss", w, opt.tol, static_cast<int>(s.pts.size()), os.str());
}

}  // namespace

ResidualReport check_gradient(const Immersion& im, const CheckOptions& opt) {
  Sample s = collect(im, opt);
  return gradient_impl(s, opt);
}

ResidualReport check_laplacian_u(const Immersion& im, const CheckOptions& opt) {
  Sample s = collect(im, opt);
  require_stationary(s, opt, "laplacian");
  return laplacian_impl(s, opt);
}

ResidualReport check_dlog(const Immersion& im, DlogForm form,
                          const CheckOptions& opt) {
  Sample s = collect(im, opt);
  const double k_fiber = im.spacetime->fiber.curvature;
  switch (form) {
    case DlogForm::Warp:
      require_stationary(s, opt, "dlogu_warp");
      return dlog_warp_impl(s, opt);
    case DlogForm::Fiber:
      require_stationary(s, opt, "dlogu_fiber");
      return dlog_fiber_impl(s, opt, k_fiber);
    case DlogForm::ConstantU:
      require_stationary(s, opt, "dlogu_constu");
      if (!is_constant_u(s, opt)) {
        std::ostringstream os;
        os << "dlogu_constu: requires constant u, but u ranges over ["
           << s.u_min << ", " << s.u_max << "]";
        throw PreconditionError(os.str());
      }
      return dlog_constu_impl(s, opt, k_fiber);
  }
  throw GeometryError("unknown dlog form");
}

ResidualReport check_sectional(const Immersion& im, const CheckOptions& opt) {
  Sample s = collect(im, opt);
  return sectional_impl(s, opt);
}

ResidualReport check_gauss(const Immersion& im, const CheckOptions& opt) {
  Sample s = collect(im, opt);
  require_stationary(s, opt, "gauss");
  return gauss_impl(s, opt, im.spacetime->fiber.curvature);
}

std::vector<ResidualReport> run_identity_suite(const Immersion& im,
                                               const CheckOptions& opt) {
  Sample s = collect(im, opt);
  const double k_fiber = im.spacetime->fiber.curvature;
  std::vector<ResidualReport> out;
  out.push_back(gradient_impl(s, opt));
  out.push_back(sectional_impl(s, opt));
  if (is_stationary(s, opt)) {
    out.push_back(laplacian_impl(s, opt));
    out.push_back(dlog_warp_impl(s, opt));
    out.push_back(dlog_fiber_impl(s, opt, k_fiber));
    out.push_back(gauss_impl(s, opt, k_fiber));
    if (is_constant_u(s, opt)) out.push_back(dlog_constu_impl(s, opt, k_fiber));
  }
  return out;
}

namespace {

WitnessReport witness_impl(const Immersion& im, double alpha, bool super,
                           const CheckOptions& opt) {
  if (!(alpha > 0)) throw GeometryError("witness exponent alpha must be positive");
  Sample s = collect(im, opt);
  require_stationary(s, opt, super ? "witness_super" : "witness_sub");

  WitnessReport rep;
  rep.name = super ? "superharmonic" : "subharmonic";
  rep.alpha = alpha;
  rep.tol = opt.tol;
  rep.min_theta = std::numeric_limits<double>::infinity();
  rep.worst_sign = 0;
  Worst w;

  const double sign_tol = 1e-8;
  for (size_t i = 0; i < s.pts.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    SurfaceEval ev = evaluate_surface(im, s.pts[i]);

    // direct divergence-form Laplacian of (1+u)^{-alpha}
    const double base = 1.0 + r.u;
    const double d0 = std::pow(base, -alpha);
    const double d1 = -alpha * std::pow(base, -alpha - 1.0);
    const double d2 = alpha * (alpha + 1.0) * std::pow(base, -alpha - 2.0);
    const double d3 =
        -alpha * (alpha + 1.0) * (alpha + 2.0) * std::pow(base, -alpha - 3.0);
    const Jet3 hjet = jet_compose(1.0 + ev.u, d0, d1, d2, d3);
    const double lap_h = laplace_beltrami(ev, hjet).lap;

    const double f2 = r.f * r.f;
    const double km = im.spacetime->fiber.curvature;

    if (super) {
      // displayed form: h'(u) psi~ u + h'(u) tr(A^2_{T_nor}) theta / u
      const double hp = d1;
      const double psi_tilde = 2.0 * (r.K_intrinsic - (r.fp * r.fp + km) / f2) +
                               (f2 / r.u) * r.sum_tr_A2_space;
      const double theta = f2 + 2.0 * (r.u - f2) -
                           2.0 * r.u * (alpha + 1.0) * (r.u - f2) / (1.0 + r.u);
      const double display = hp * psi_tilde * r.u + hp * (r.tr_A2_time / r.u) * theta;
      w.add(lap_h, display, s.pts[i]);

      const double u_bound = (2.0 * alpha + 1.0) / (2.0 * alpha) * f2 +
                             1.0 / (2.0 * alpha);
      if (r.u <= u_bound + 1e-12) {
        ++rep.admissible_points;
        rep.min_theta = std::min(rep.min_theta, theta);
        // sign claim: where the curvature hypothesis also holds pointwise,
        // h(u) must be superharmonic
        const double kq = r.K_intrinsic - (r.fp * r.fp + km) / f2;
        if (kq >= -opt.tol && (r.fp * r.fp + km) / f2 >= -opt.tol) {
          ++rep.sign_points;
          rep.worst_sign = std::max(rep.worst_sign, lap_h);
        }
      }
    } else {
      // displayed form for v = -(1+u)^{-alpha}
      const double lap_v = -lap_h;
      const double pref = 2.0 * alpha * std::pow(base, -alpha - 1.0);
      const double display =
          pref * (r.K_intrinsic - r.fpp / r.f) * (r.u - f2) +
          pref * r.tr_A2_time * (1.0 - alpha * r.u + alpha * f2 + f2) / base;
      w.add(lap_v, display, s.pts[i]);

      const double u_bound = (alpha + 1.0) / alpha * f2 + 1.0 / alpha;
      if (r.u <= u_bound + 1e-12) {
        ++rep.admissible_points;
        // sign claim: where K >= f''/f holds pointwise, v is subharmonic
        if (r.K_intrinsic - r.fpp / r.f >= -opt.tol) {
          ++rep.sign_points;
          rep.worst_sign = std::min(rep.worst_sign, lap_v);
        }
      }
    }
  }

  rep.max_formula_residual = w.residual;
  rep.worst_point = w.at;
  if (rep.admissible_points == 0) rep.min_theta = 0;

  bool sign_ok = true;
  std::ostringstream os;
  if (super) {
    sign_ok = rep.min_theta >= -sign_tol &&
              (rep.sign_points == 0 || rep.worst_sign <= sign_tol);
    os << "admissible points " << rep.admissible_points << ", min theta "
       << rep.min_theta << "; sign points " << rep.sign_points;
    if (rep.sign_points == 0)
      os << " (sign condition vacuous on this sample)";
    else
      os << ", max Laplacian there " << rep.worst_sign;
  } else {
    sign_ok = rep.sign_points == 0 || rep.worst_sign >= -sign_tol;
    os << "admissible points " << rep.admissible_points << "; sign points "
       << rep.sign_points;
    if (rep.sign_points == 0)
      os << " (sign condition vacuous on this sample)";
    else
      os << ", min Laplacian there " << rep.worst_sign;
  }
  rep.note = os.str();
  rep.pass = rep.max_formula_residual <= opt.tol && sign_ok;
  return rep;
}

}  // namespace

WitnessReport superharmonic_witness(const Immersion& im, double alpha,
                                    const CheckOptions& opt) {
  return witness_impl(im, alpha, true, opt);
}

WitnessReport subharmonic_witness(const Immersion& im, double alpha,
                                  const CheckOptions& opt) {
  return witness_impl(im, alpha, false, opt);
}

GrowthFit fit_growth_constant(const Immersion& im, const CheckOptions& opt) {
  Sample s = collect(im, opt);
  GrowthFit fit;
  double max_r = 0;
  const Eigen::Vector2d center = im.domain.kind == Domain::Kind::Disk
                                     ? im.domain.center
                                     : Eigen::Vector2d(0.5 * (im.domain.x0 + im.domain.x1),
                                                       0.5 * (im.domain.y0 + im.domain.y1));
  for (const Eigen::Vector2d& p : s.pts)
    max_r = std::max(max_r, (p - center).norm());
  for (size_t i = 0; i < s.pts.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double c = r.u / (r.f * r.f + 1.0);
    if (c > fit.fitted_c) {
      fit.fitted_c = c;
      fit.worst_point = s.pts[i];
    }
    if ((s.pts[i] - center).norm() <= 0.5 * max_r)
      fit.half_c = std::max(fit.half_c, c);
  }
  fit.ratio = fit.half_c > 0 ? fit.fitted_c / fit.half_c : 1.0;
  fit.fails_globally = fit.ratio >= 2.0;
  return fit;
}

TheoremId parse_theorem_id(const std::string& token) {
  if (token == "rigidity_main" || token == "Thm4.1") return TheoremId::RigidityMain;
  if (token == "rigidity_bounded" || token == "Cor4.2")
    return TheoremId::RigidityBounded;
  if (token == "rigidity_static" || token == "Cor4.3")
    return TheoremId::RigidityStatic;
  if (token == "curvature_bound" || token == "Thm4.5")
    return TheoremId::CurvatureBound;
  if (token == "curvature_bound_bounded" || token == "Cor4.6")
    return TheoremId::CurvatureBoundBounded;
  throw GeometryError("unknown theorem id: " + token);
}

std::string theorem_role_name(TheoremId id) {
  switch (id) {
    case TheoremId::RigidityMain: return "rigidity_main";
    case TheoremId::RigidityBounded: return "rigidity_bounded";
    case TheoremId::RigidityStatic: return "rigidity_static";
    case TheoremId::CurvatureBound: return "curvature_bound";
    case TheoremId::CurvatureBoundBounded: return "curvature_bound_bounded";
  }
  return {};
}

std::string theorem_compat_id(TheoremId id) {
  switch (id) {
    case TheoremId::RigidityMain: return "Thm4.1";
    case TheoremId::RigidityBounded: return "Cor4.2";
    case TheoremId::RigidityStatic: return "Cor4.3";
    case TheoremId::CurvatureBound: return "Thm4.5";
    case TheoremId::CurvatureBoundBounded: return "Cor4.6";
  }
  return {};
}

namespace {

using Status = HypothesisItem::Status;

HypothesisItem item_completeness() {
  HypothesisItem it;
  it.name = "complete";
  it.status = Status::Indeterminate;
  it.note = "completeness is not decidable from a finite sample";
  return it;
}

HypothesisItem item_stationary(const Sample& s, const CheckOptions& opt) {
  HypothesisItem it;
  it.name = "stationary";
  it.status = is_stationary(s, opt) ? Status::Holds : Status::Fails;
  it.margin = opt.stationary_tol - s.max_h;
  it.worst_point = s.max_h_at;
  std::ostringstream os;
  os << "max |H| over the sample = " << s.max_h;
  it.note = os.str();
  return it;
}

HypothesisItem item_static(const Immersion& im) {
  HypothesisItem it;
  it.name = "static ambient";
  it.status = im.spacetime->is_static ? Status::Holds : Status::Fails;
  it.note = im.spacetime->is_static ? "warping function is the constant 1"
                                    : "warping function is not constant";
  return it;
}

// (Kgeqzero): K >= (f'^2 + K_M)/f^2 >= 0 pointwise.
HypothesisItem item_k_nonneg(const Sample& s, const CheckOptions& opt,
                             double km, bool static_form) {
  HypothesisItem it;
  it.name = static_form ? "K >= K_M >= 0" : "(Kgeqzero)";
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = min1;
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double threshold = (r.fp * r.fp + km) / (r.f * r.f);
    const double d1 = r.K_intrinsic - threshold;
    if (d1 < min1) {
      min1 = d1;
      it.worst_point = s.pts[i];
    }
    min2 = std::min(min2, threshold);
  }
  it.margin = std::min(min1, min2);
  it.status = it.margin >= -opt.tol ? Status::Holds : Status::Fails;
  std::ostringstream os;
  os << "min of K - (f'^2+K_M)/f^2 = " << min1
     << ", min of (f'^2+K_M)/f^2 = " << min2;
  it.note = os.str();
  return it;
}

// (new4): K >= max{f''/f, 0} pointwise.
HypothesisItem item_k_above_static(const Sample& s, const CheckOptions& opt) {
  HypothesisItem it;
  it.name = "(new4)";
  double min_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    const double m = r.K_intrinsic - std::max(r.fpp / r.f, 0.0);
    if (m < min_margin) {
      min_margin = m;
      it.worst_point = s.pts[i];
    }
  }
  it.margin = min_margin;
  it.status = min_margin >= -opt.tol ? Status::Holds : Status::Fails;
  std::ostringstream os;
  os << "min of K - max{f''/f, 0} = " << min_margin;
  it.note = os.str();
  return it;
}

HypothesisItem item_growth(const GrowthFit& fit, bool as_bounded) {
  HypothesisItem it;
  it.name = as_bounded ? "u bounded" : "(subquadratic)";
  it.worst_point = fit.worst_point;
  it.margin = 2.0 - fit.ratio;  // positive while the fit is radius-stable
  std::ostringstream os;
  if (fit.fails_globally) {
    it.status = Status::Fails;
    os << (as_bounded ? "u appears unbounded: " : "(subquadratic) fails globally: ")
       << "fitted C grows from " << fit.half_c << " (half radius) to "
       << fit.fitted_c << " (full radius), ratio " << fit.ratio;
  } else {
    it.status = Status::Holds;
    os << "holds on the sample with fitted C = " << fit.fitted_c
       << " (half-radius fit " << fit.half_c << ", ratio " << fit.ratio << ")";
  }
  it.note = os.str();
  return it;
}

}  // namespace

HypothesisReport hypothesis_report(const Immersion& im, TheoremId id,
                                   const CheckOptions& opt) {
  Sample s = collect(im, opt);
  const double km = im.spacetime->fiber.curvature;

  HypothesisReport rep;
  rep.theorem = id;
  rep.theorem_name = theorem_role_name(id);
  rep.compat_id = theorem_compat_id(id);

  for (size_t i = 0; i < s.reps.size(); ++i) {
    const ExtrinsicReport& r = s.reps[i];
    rep.max_sigma = std::max(rep.max_sigma, r.sigma_mag);
    rep.max_eqk = std::max(
        rep.max_eqk, r.K_intrinsic - (r.fp * r.fp + km) / (r.f * r.f));
  }

  rep.items.push_back(item_completeness());
  rep.items.push_back(item_stationary(s, opt));
  switch (id) {
    case TheoremId::RigidityMain:
      rep.items.push_back(item_k_nonneg(s, opt, km, false));
      rep.growth = fit_growth_constant(im, opt);
      rep.items.push_back(item_growth(*rep.growth, false));
      break;
    case TheoremId::RigidityBounded:
      rep.items.push_back(item_k_nonneg(s, opt, km, false));
      rep.growth = fit_growth_constant(im, opt);
      rep.items.push_back(item_growth(*rep.growth, true));
      break;
    case TheoremId::RigidityStatic:
      rep.items.push_back(item_static(im));
      rep.items.push_back(item_k_nonneg(s, opt, km, true));
      rep.growth = fit_growth_constant(im, opt);
      rep.items.push_back(item_growth(*rep.growth, true));
      break;
    case TheoremId::CurvatureBound:
      rep.items.push_back(item_k_above_static(s, opt));
      rep.growth = fit_growth_constant(im, opt);
      rep.items.push_back(item_growth(*rep.growth, false));
      break;
    case TheoremId::CurvatureBoundBounded:
      rep.items.push_back(item_k_above_static(s, opt));
      rep.growth = fit_growth_constant(im, opt);
      rep.items.push_back(item_growth(*rep.growth, true));
      break;
  }

  bool any_fails = false;
  bool all_decided = true;
  for (const HypothesisItem& it : rep.items) {
    if (it.status == Status::Fails) any_fails = true;
    if (it.status == Status::Indeterminate) all_decided = false;
  }

  const bool rigidity = id == TheoremId::RigidityMain ||
                        id == TheoremId::RigidityBounded ||
                        id == TheoremId::RigidityStatic;
  std::ostringstream os;
  if (any_fails) {
    os << "some hypothesis fails on the sample; the conclusion is not implied. ";
  } else {
    os << "all testable hypotheses hold"
       << (all_decided ? "" : " (untestable ones assumed)") << ". ";
  }
  if (rigidity) {
    os << "conclusion data: max |sigma| over the sample = " << rep.max_sigma
       << (rep.max_sigma <= 10.0 * opt.stationary_tol
               ? " (totally geodesic within tolerance)"
               : " (not totally geodesic)");
  } else {
    os << "conclusion data: max of K - (f'^2+K_M)/f^2 = " << rep.max_eqk
       << (rep.max_eqk <= opt.tol ? " (bound satisfied)" : " (bound violated)")
       << ", max |sigma| = " << rep.max_sigma;
  }
  rep.conclusion = os.str();
  return rep;
}

}  // namespace grw
