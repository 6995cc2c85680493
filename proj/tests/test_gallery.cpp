#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "grw/gallery.hpp"
#include "grw/surface.hpp"
#include "oracles.hpp"

using namespace grw;
using Eigen::Vector2d;
using grw::testing::rel_gap;

namespace {

// Compare the report's u and intrinsic curvature against a surface's oracles
// on a centered sample square.
void check_oracles(const GallerySurface& g, double half, double tol_u, double tol_k) {
  REQUIRE(bool(g.u_oracle));
  REQUIRE(bool(g.k_oracle));
  const int n = 7;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector2d p(-half + 2 * half * i / (n - 1), -half + 2 * half * j / (n - 1));
      CAPTURE(g.name);
      CAPTURE(p.x());
      CAPTURE(p.y());
      const ExtrinsicReport rep = extrinsic_report(g.immersion, p);
      CHECK(rel_gap(rep.u, g.u_oracle(p.x(), p.y())) <= tol_u);
      const double kw = g.k_oracle(p.x(), p.y());
      CHECK(std::abs(rep.K_intrinsic - kw) <= tol_k * std::max(1.0, std::abs(kw)));
    }
  }
}

}  // namespace

TEST_CASE("the gallery lists exactly its four surfaces") {
  const auto entries = list_surfaces();
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].first == "slice");
  CHECK(entries[1].first == "graph_w");
  CHECK(entries[2].first == "enneper_l4");
  CHECK(entries[3].first == "hyperbolic_slice");
  for (const auto& [name, summary] : entries) CHECK(!summary.empty());
  CHECK_THROWS_AS(make_surface("moebius"), GeometryError);
}

TEST_CASE("gallery oracles agree with the evaluated geometry") {
  check_oracles(make_surface("slice"), 2.0, 1e-12, 1e-11);
  check_oracles(make_surface("graph_w"), 2.0, 1e-11, 1e-10);
  check_oracles(make_surface("enneper_l4"), 2.4, 1e-10, 1e-9);
  check_oracles(make_surface("hyperbolic_slice"), 1.4, 1e-11, 1e-9);
}

TEST_CASE("graph family rejects non-harmonic defining functions") {
  auto graph_opt = [](const char* w) {
    GalleryOptions o;
    o.graph_expr = w;
    return o;
  };
  CHECK_THROWS_AS(make_surface("graph_w", graph_opt("x^3")), GeometryError);
  CHECK_THROWS_AS(make_surface("graph_w", graph_opt("x^2+y^2")), GeometryError);

  // Harmonic alternatives are accepted; only the default carries oracles.
  const GallerySurface xy = make_surface("graph_w", graph_opt("x*y"));
  CHECK(!xy.u_oracle);
  const ExtrinsicReport rep = extrinsic_report(xy.immersion, {0.5, -0.3});
  CHECK(rep.H_mag <= 1e-12);  // harmonic graphs are maximal
  const GallerySurface cubic = make_surface("graph_w", graph_opt("x^3-3*x*y^2"));
  CHECK(extrinsic_report(cubic.immersion, {0.4, 0.2}).H_mag <= 1e-11);

  const GallerySurface def = make_surface("graph_w", graph_opt("x^2-y^2"));
  CHECK(bool(def.u_oracle));  // explicitly passing the default keeps oracles
}

TEST_CASE("slice options move the level and the domain radius") {
  GalleryOptions at07;
  at07.slice_t0 = 0.7;
  const GallerySurface s = make_surface("slice", at07);
  const double f = std::cosh(0.7);
  const ExtrinsicReport rep = extrinsic_report(s.immersion, {0.2, 0.4});
  CHECK(rel_gap(rep.u, f * f) <= 1e-13);
  CHECK(rel_gap(s.u_oracle(0.2, 0.4), f * f) <= 1e-15);
  CHECK(rel_gap(rep.H_mag, std::tanh(0.7)) <= 1e-11);  // away from t0=0: not maximal

  const GallerySurface wide = make_surface("slice");
  CHECK_NOTHROW(evaluate_surface(wide.immersion, {9.0, 0.0}));
  GalleryOptions small;
  small.extent = 2.0;
  const GallerySurface narrow = make_surface("slice", small);
  CHECK_THROWS_AS(evaluate_surface(narrow.immersion, {5.0, 0.0}), GeometryError);
}

TEST_CASE("hyperbolic slice stays inside the conformal chart") {
  auto extent_opt = [](double r) {
    GalleryOptions o;
    o.extent = r;
    return o;
  };
  CHECK_THROWS_AS(make_surface("hyperbolic_slice", extent_opt(2.0)), GeometryError);
  CHECK_THROWS_AS(make_surface("hyperbolic_slice", extent_opt(5.0)), GeometryError);
  const GallerySurface g = make_surface("hyperbolic_slice", extent_opt(1.5));
  CHECK(rel_gap(extrinsic_report(g.immersion, {0.9, 0.0}).K_intrinsic, -1.0) <= 1e-9);
}

TEST_CASE("enneper surface: curvature, metric, and defining curve") {
  const GallerySurface g = make_surface("enneper_l4");

  const ExtrinsicReport origin = extrinsic_report(g.immersion, {0.0, 0.0});
  CHECK(std::abs(origin.K_intrinsic - -4.0) <= 1e-6);
  CHECK(rel_gap(origin.u, 2.0) <= 1e-12);
  CHECK(origin.H_mag <= 1e-12);

  const Eigen::Matrix2d m = induced_metric(g.immersion, {1.0, 0.0});
  CHECK(std::abs(m(0, 0) - 4.0) <= 1e-10);
  CHECK(std::abs(m(1, 1) - 4.0) <= 1e-10);
  CHECK(std::abs(m(0, 1)) <= 1e-10);

  // First derivatives of the components reproduce the holomorphic curve
  // phi(z) = (1 - z^2, i (1 + z^2), 2 z, sqrt(2) (1 - z^2)):
  // d_x psi_k = Re phi_k and d_y psi_k = -Im phi_k.
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> d(-1.4, 1.4);
  for (int trial = 0; trial < 5; ++trial) {
    const double x = d(rng), y = d(rng);
    const std::complex<double> z(x, y);
    const std::complex<double> phi[4] = {
        1.0 - z * z, std::complex<double>(0, 1) * (1.0 + z * z), 2.0 * z,
        std::sqrt(2.0) * (1.0 - z * z)};
    const auto jets = evaluate_jets(g.immersion, {x, y});
    REQUIRE(jets.size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(jets[size_t(k)].g[0] - phi[k].real()) <= 1e-10);
      CHECK(std::abs(jets[size_t(k)].g[1] + phi[k].imag()) <= 1e-10);
    }
  }

  // u is maximal on the y-axis where it equals 2.
  CHECK(rel_gap(extrinsic_report(g.immersion, {0.0, 2.5}).u, 2.0) <= 1e-12);
  CHECK(extrinsic_report(g.immersion, {1.5, 0.7}).u < 2.0);
}

TEST_CASE("the defining curve is null and conformal to machine precision") {
  std::vector<std::complex<double>> zs = {{0, 0}, {1, 0}, {0, 1}, {-0.5, 0.5}};
  std::mt19937 rng(13u);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::complex<double> z(2.0 * d(rng), 2.0 * d(rng));
    if (std::abs(z) > 2.0) z *= 2.0 / std::abs(z);
    zs.push_back(z);
  }
  const HolomorphicCheck hc = holomorphic_check(zs);
  CHECK(hc.max_null_residual <= 1e-12);
  CHECK(hc.max_conformal_residual <= 1e-12);
}
