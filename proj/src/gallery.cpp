#include "grw/gallery.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace grw {

namespace {

std::shared_ptr<const GRWSpacetime> static_flat(int dim, double t_half_range) {
  return std::make_shared<const GRWSpacetime>(make_spacetime(
      make_warping("1", -t_half_range, t_half_range),
      make_fiber(FiberKind::Euclidean, dim, 0.0)));
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// The graph family is spacelike and stationary only when the defining
// function is harmonic; sample the flat Laplacian of w over the domain and
// reject anything visibly non-harmonic.
void require_harmonic(const ExprAst& w, const Domain& dom) {
  double cx = 0, cy = 0, half = 0;
  if (dom.kind == Domain::Kind::Rect) {
    cx = 0.5 * (dom.x0 + dom.x1);
    cy = 0.5 * (dom.y0 + dom.y1);
    half = 0.5 * std::min(dom.x1 - dom.x0, dom.y1 - dom.y0);
  } else {
    cx = dom.center.x();
    cy = dom.center.y();
    half = dom.radius / std::sqrt(2.0);
  }
  double scale = 1.0;
  double worst = 0.0;
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = cx - half + 2.0 * half * i / (n - 1);
      const double y = cy - half + 2.0 * half * j / (n - 1);
      std::array<Jet3, 2> env = {jet_var(0, x), jet_var(1, y)};
      Jet3 jw = eval_jet(w, std::span<const Jet3>(env.data(), 2));
      worst = std::max(worst, std::abs(jw.hess(0, 0) + jw.hess(1, 1)));
      scale = std::max({scale, std::abs(jw.hess(0, 0)), std::abs(jw.hess(1, 1))});
    }
  }
  if (worst > 1e-8 * scale)
    throw GeometryError(
        "graph function must be harmonic (flat Laplacian of w does not vanish)");
}

GallerySurface make_slice(const GalleryOptions& opt) {
  const double t0 = opt.slice_t0.value_or(0.0);
  const double radius = opt.extent.value_or(10.0);
  auto st = std::make_shared<const GRWSpacetime>(
      make_spacetime(make_warping("cosh(t)", -5.0, 5.0),
                     make_fiber(FiberKind::Euclidean, 3, 0.0)));
  GallerySurface g;
  g.name = "slice";
  g.summary =
      "level set t = t0 of a cosh-warped spacetime over flat 3-space; maximal "
      "exactly at the default t0 = 0, where the warping is critical";
  g.immersion = make_immersion({format_number(t0), "x", "y", "0"},
                               Domain::disk({0, 0}, radius), st);
  const double f0 = std::cosh(t0);
  g.u_oracle = [f0](double, double) { return f0 * f0; };
  g.k_oracle = [](double, double) { return 0.0; };
  return g;
}

GallerySurface make_graph(const GalleryOptions& opt) {
  const double radius = opt.extent.value_or(17.0);
  const std::string w_text = opt.graph_expr.value_or("x^2-y^2");
  Domain dom = Domain::disk({0, 0}, radius);
  ExprAst w = parse_expr(w_text, {"x", "y"});
  require_harmonic(w, dom);
  // the time range must cover w over the domain
  auto st = static_flat(3, 1e6);
  GallerySurface g;
  g.name = "graph_w";
  g.summary =
      "entire graph (w, x, y, w) over a harmonic function w in flat spacetime; "
      "the induced metric is exactly Euclidean";
  g.immersion = make_immersion({w_text, "x", "y", w_text}, dom, st);
  if (!opt.graph_expr || w_text == "x^2-y^2") {
    g.u_oracle = [](double x, double y) { return 1.0 + 4.0 * (x * x + y * y); };
    g.k_oracle = [](double, double) { return 0.0; };
  }
  return g;
}

GallerySurface make_enneper(const GalleryOptions& opt) {
  const double radius = opt.extent.value_or(3.5);
  auto st = static_flat(3, 1e6);
  GallerySurface g;
  g.name = "enneper_l4";
  g.summary =
      "spacelike stationary immersion of Enneper type in flat spacetime, built "
      "from a holomorphic null curve";
  g.immersion = make_immersion(
      {"x-x^3/3+x*y^2", "-y-x^2*y+y^3/3", "x^2-y^2",
       "sqrt(2)*x-(sqrt(2)/3)*x^3+sqrt(2)*x*y^2"},
      Domain::disk({0, 0}, radius), st);
  g.u_oracle = [](double x, double y) {
    const double q = 1.0 + x * x + y * y;
    return 2.0 * (q * q - 2.0 * x * x) / (q * q);
  };
  g.k_oracle = [](double x, double y) {
    const double q = 1.0 + x * x + y * y;
    return -4.0 / (q * q * q * q);
  };
  return g;
}

GallerySurface make_hyperbolic(const GalleryOptions& opt) {
  const double radius = opt.extent.value_or(1.9999);
  if (radius >= 2.0)
    throw GeometryError(
        "hyperbolic slice domain must stay inside the fiber chart (radius < 2)");
  auto st = std::make_shared<const GRWSpacetime>(make_spacetime(
      make_warping("1", -10.0, 10.0), make_fiber(FiberKind::Hyperbolic, 2, -1.0)));
  GallerySurface g;
  g.name = "hyperbolic_slice";
  g.summary =
      "totally geodesic slice t = 0 of the static product over the hyperbolic "
      "plane";
  g.immersion =
      make_immersion({"0", "x", "y"}, Domain::disk({0, 0}, radius), st);
  g.u_oracle = [](double, double) { return 1.0; };
  g.k_oracle = [](double, double) { return -1.0; };
  return g;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> list_surfaces() {
  return {
      {"slice", make_slice({}).summary},
      {"graph_w", make_graph({}).summary},
      {"enneper_l4", make_enneper({}).summary},
      {"hyperbolic_slice", make_hyperbolic({}).summary},
  };
}

GallerySurface make_surface(const std::string& name, const GalleryOptions& opt) {
  if (name == "slice") return make_slice(opt);
  if (name == "graph_w") return make_graph(opt);
  if (name == "enneper_l4") return make_enneper(opt);
  if (name == "hyperbolic_slice") return make_hyperbolic(opt);
  throw GeometryError("unknown gallery surface: " + name);
}

HolomorphicCheck holomorphic_check(const std::vector<std::complex<double>>& zs) {
  using C = std::complex<double>;
  HolomorphicCheck out;
  const double r2 = std::sqrt(2.0);
  for (const C& z : zs) {
    const C z2 = z * z;
    const C phi1 = 1.0 - z2;
    const C phi2 = C(0, 1) * (1.0 + z2);
    const C phi3 = 2.0 * z;
    const C phi4 = r2 * (1.0 - z2);
    const C null_sum = -phi1 * phi1 + phi2 * phi2 + phi3 * phi3 + phi4 * phi4;
    const double conf = -std::norm(phi1) + std::norm(phi2) + std::norm(phi3) +
                        std::norm(phi4);
    const double target = 2.0 * (1.0 + std::norm(z)) * (1.0 + std::norm(z));
    out.max_null_residual = std::max(out.max_null_residual, std::abs(null_sum));
    out.max_conformal_residual =
        std::max(out.max_conformal_residual, std::abs(conf - target));
  }
  return out;
}

}  // namespace grw
