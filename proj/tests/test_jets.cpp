#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "grw/jet.hpp"
#include "oracles.hpp"

using namespace grw;
using grw::testing::fd_jet;
using grw::testing::jet_gap;
using grw::testing::rel_gap;

namespace {

Jet3 random_jet(std::mt19937& rng, bool unit_away_from_zero = false) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  Jet3 a;
  a.v = d(rng);
  if (unit_away_from_zero && std::abs(a.v) < 0.5) a.v += (a.v < 0 ? -0.5 : 0.5);
  for (auto& x : a.g) x = d(rng);
  for (auto& x : a.h) x = d(rng);
  for (auto& x : a.t) x = d(rng);
  return a;
}

bool jets_close(const Jet3& a, const Jet3& b, double tol) {
  return jet_gap(a, b) <= tol;
}

}  // namespace

TEST_CASE("constants and variables seed the expected slots") {
  const Jet3 c = jet_const(3.5);
  CHECK(c.v == 3.5);
  for (double x : c.g) CHECK(x == 0.0);
  for (double x : c.h) CHECK(x == 0.0);
  for (double x : c.t) CHECK(x == 0.0);

  const Jet3 x = jet_var(0, 1.25);
  CHECK(x.v == 1.25);
  CHECK(x.g[0] == 1.0);
  CHECK(x.g[1] == 0.0);
  const Jet3 y = jet_var(1, -0.75);
  CHECK(y.g[0] == 0.0);
  CHECK(y.g[1] == 1.0);

  CHECK_THROWS_AS(jet_var(2, 0.0), JetError);
  CHECK_THROWS_AS(jet_var(-1, 0.0), JetError);
}

TEST_CASE("symmetric index access maps to the deduplicated storage") {
  Jet3 a;
  a.h = {1.0, 2.0, 3.0};
  a.t = {4.0, 5.0, 6.0, 7.0};
  CHECK(a.hess(0, 0) == 1.0);
  CHECK(a.hess(0, 1) == 2.0);
  CHECK(a.hess(1, 0) == 2.0);
  CHECK(a.hess(1, 1) == 3.0);
  CHECK(a.third(0, 0, 0) == 4.0);
  CHECK(a.third(0, 0, 1) == 5.0);
  CHECK(a.third(0, 1, 0) == 5.0);
  CHECK(a.third(1, 0, 0) == 5.0);
  CHECK(a.third(1, 1, 0) == 6.0);
  CHECK(a.third(1, 1, 1) == 7.0);
}

TEST_CASE("ring axioms hold on random jets") {
  std::mt19937 rng(20260817u);
  for (int trial = 0; trial < 200; ++trial) {
    const Jet3 a = random_jet(rng);
    const Jet3 b = random_jet(rng);
    const Jet3 c = random_jet(rng);

    CHECK(jets_close((a + b) + c, a + (b + c), 1e-15));
    CHECK(jets_close(a + b, b + a, 0.0));
    CHECK(jets_close(a * b, b * a, 1e-14));  // summands associate differently
    CHECK(jets_close((a * b) * c, a * (b * c), 1e-13));
    CHECK(jets_close(a * (b + c), a * b + a * c, 1e-13));
    CHECK(jets_close(a - a, jet_const(0.0), 0.0));
    CHECK(jets_close(a + (-a), jet_const(0.0), 0.0));
    CHECK(jets_close(a * jet_const(1.0), a, 0.0));
    CHECK(jets_close(2.5 * a, a * 2.5, 0.0));
  }
}

TEST_CASE("division inverts multiplication and keeps the value slot exact") {
  std::mt19937 rng(7u);
  for (int trial = 0; trial < 200; ++trial) {
    const Jet3 a = random_jet(rng);
    const Jet3 b = random_jet(rng, /*unit_away_from_zero=*/true);
    const Jet3 q = a / b;
    CHECK(q.v == a.v / b.v);  // bit-identical, not just close
    CHECK(jets_close(q * b, a, 1e-12));
    CHECK(jets_close((a * b) / b, a, 1e-12));
  }
  CHECK_THROWS_AS(jet_const(1.0) / jet_const(0.0), JetError);
}

TEST_CASE("polynomial jets are exact") {
  // p(x, y) = x^3 + 2 x^2 y - y^3 + 5 at (1.5, -0.5).
  const double xv = 1.5, yv = -0.5;
  const Jet3 x = jet_var(0, xv);
  const Jet3 y = jet_var(1, yv);
  const Jet3 p = x * x * x + 2.0 * (x * x * y) - y * y * y + 5.0;

  CHECK(rel_gap(p.v, xv * xv * xv + 2 * xv * xv * yv - yv * yv * yv + 5) <= 1e-15);
  CHECK(rel_gap(p.g[0], 3 * xv * xv + 4 * xv * yv) <= 1e-15);
  CHECK(rel_gap(p.g[1], 2 * xv * xv - 3 * yv * yv) <= 1e-15);
  CHECK(rel_gap(p.h[0], 6 * xv + 4 * yv) <= 1e-15);
  CHECK(rel_gap(p.h[1], 4 * xv) <= 1e-15);
  CHECK(rel_gap(p.h[2], -6 * yv) <= 1e-15);
  CHECK(p.t[0] == 6.0);
  CHECK(p.t[1] == 4.0);
  CHECK(p.t[2] == 0.0);
  CHECK(p.t[3] == -6.0);
}

TEST_CASE("reciprocal jet matches the analytic derivatives of 1/x") {
  const Jet3 r = 1.0 / jet_var(0, 2.0);
  CHECK(rel_gap(r.v, 0.5) <= 1e-16);
  CHECK(rel_gap(r.g[0], -0.25) <= 1e-15);
  CHECK(rel_gap(r.h[0], 0.25) <= 1e-15);
  CHECK(rel_gap(r.t[0], -0.375) <= 1e-15);
  CHECK(r.g[1] == 0.0);
  CHECK(r.h[1] == 0.0);
  CHECK(r.h[2] == 0.0);
}

TEST_CASE("composite expressions match Richardson finite differences") {
  struct Case {
    std::string name;
    grw::testing::Fn2 scalar;
    Jet3 (*jet)(double, double);
    std::array<double, 2> at;
  };
  const Case cases[] = {
      {"sin*cosh over shifted square",
       [](double x, double y) { return std::sin(x) * std::cosh(y) / (1.5 + x * x); },
       [](double xv, double yv) {
         const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
         return jet_sin(x) * jet_cosh(y) / (1.5 + x * x);
       },
       {0.7, -0.4}},
      {"exp of mixed linear times log",
       [](double x, double y) {
         return std::exp(0.3 * x - 0.2 * y) * std::log(2.0 + std::sin(x * y));
       },
       [](double xv, double yv) {
         const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
         return jet_exp(0.3 * x - 0.2 * y) * jet_log(2.0 + jet_sin(x * y));
       },
       {0.9, 0.6}},
      {"sqrt of positive quadratic",
       [](double x, double y) { return std::sqrt(1.0 + x * x + y * y); },
       [](double xv, double yv) {
         const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
         return jet_sqrt(1.0 + x * x + y * y);
       },
       {-0.8, 0.55}},
      {"cos of quotient",
       [](double x, double y) { return std::cos(x / (2.0 + y * y)); },
       [](double xv, double yv) {
         const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
         return jet_cos(x / (2.0 + y * y));
       },
       {1.1, -0.3}},
      {"sinh of product",
       [](double x, double y) { return std::sinh(x * y) + std::cos(x) * std::cos(y); },
       [](double xv, double yv) {
         const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
         return jet_sinh(x * y) + jet_cos(x) * jet_cos(y);
       },
       {0.35, 0.8}},
  };
  for (const auto& tc : cases) {
    CAPTURE(tc.name);
    const Jet3 got = tc.jet(tc.at[0], tc.at[1]);
    const Jet3 want = fd_jet(tc.scalar, tc.at[0], tc.at[1]);
    CHECK(jet_gap(got, want) <= 1e-6);
  }
}

TEST_CASE("jet_compose applies the chain rule for a custom outer function") {
  // atan composed with g(x, y) = x^2 - y; derivatives of atan at v:
  // 1/(1+v^2), -2v/(1+v^2)^2, (6v^2-2)/(1+v^2)^3.
  const double xv = 0.8, yv = -0.35;
  const Jet3 inner = jet_var(0, xv) * jet_var(0, xv) - jet_var(1, yv);
  const double v = inner.v, w = 1.0 + v * v;
  const Jet3 got = jet_compose(inner, std::atan(v), 1.0 / w, -2.0 * v / (w * w),
                               (6.0 * v * v - 2.0) / (w * w * w));
  const Jet3 want = fd_jet(
      [](double x, double y) { return std::atan(x * x - y); }, xv, yv);
  CHECK(jet_gap(got, want) <= 1e-6);
}

TEST_CASE("jet_demote extracts the order-2 jet of a partial derivative") {
  // F(x, y) = sin(x) y^2 + x^3; dF/dx = cos(x) y^2 + 3 x^2.
  const double xv = 0.6, yv = 1.3;
  const Jet3 x = jet_var(0, xv), y = jet_var(1, yv);
  const Jet3 f = jet_sin(x) * y * y + x * x * x;
  const Jet3 dx = jet_demote(f, 0);
  const Jet3 direct = jet_cos(x) * y * y + 3.0 * (x * x);

  CHECK(rel_gap(dx.v, direct.v) <= 1e-15);
  CHECK(rel_gap(dx.g[0], direct.g[0]) <= 1e-15);
  CHECK(rel_gap(dx.g[1], direct.g[1]) <= 1e-15);
  CHECK(rel_gap(dx.h[0], direct.h[0]) <= 1e-15);
  CHECK(rel_gap(dx.h[1], direct.h[1]) <= 1e-15);
  CHECK(rel_gap(dx.h[2], direct.h[2]) <= 1e-15);

  const Jet3 dy = jet_demote(f, 1);
  const Jet3 direct_y = 2.0 * (jet_sin(x) * y);
  CHECK(rel_gap(dy.v, direct_y.v) <= 1e-15);
  CHECK(rel_gap(dy.h[0], direct_y.h[0]) <= 1e-15);

  CHECK_THROWS_AS(jet_demote(f, 2), JetError);
}

TEST_CASE("integer powers agree with repeated multiplication") {
  std::mt19937 rng(99u);
  for (int trial = 0; trial < 100; ++trial) {
    const Jet3 a = random_jet(rng, /*unit_away_from_zero=*/true);
    CHECK(jets_close(jet_pow(a, 0, 1), jet_const(1.0), 0.0));
    CHECK(jets_close(jet_pow(a, 1, 1), a, 1e-15));
    CHECK(jets_close(jet_pow(a, 2, 1), a * a, 1e-14));
    CHECK(jets_close(jet_pow(a, 5, 1), a * a * a * a * a, 1e-12));
    CHECK(jets_close(jet_pow(a, -2, 1), 1.0 / (a * a), 1e-12));
  }
  // x^0 has no derivative singularity even at a zero base.
  CHECK(jets_close(jet_pow(jet_const(0.0), 0, 1), jet_const(1.0), 0.0));
  // x^3 works at a negative base; derivative slots follow the power rule.
  const Jet3 n = jet_pow(jet_var(0, -1.5), 3, 1);
  CHECK(rel_gap(n.v, -3.375) <= 1e-15);
  CHECK(rel_gap(n.g[0], 3 * 1.5 * 1.5) <= 1e-15);
  CHECK(rel_gap(n.h[0], 6 * -1.5) <= 1e-15);
  CHECK(n.t[0] == 6.0);
}

TEST_CASE("half-integer and general rational powers") {
  const double xv = 1.7, yv = 0.4;
  const Jet3 base = 1.0 + jet_var(0, xv) * jet_var(0, xv) + jet_var(1, yv);

  CHECK(jets_close(jet_pow(base, 1, 2), jet_sqrt(base), 1e-14));
  CHECK(jets_close(jet_pow(base, 3, 2), base * jet_sqrt(base), 1e-13));
  CHECK(jets_close(jet_pow(base, -1, 2), 1.0 / jet_sqrt(base), 1e-13));

  const Jet3 got = jet_pow(base, 2, 3);
  const Jet3 want = fd_jet(
      [](double x, double y) {
        return std::exp(2.0 / 3.0 * std::log(1.0 + x * x + y));
      },
      xv, yv);
  CHECK(jet_gap(got, want) <= 1e-6);

  // The value slot reuses the pow_value kernel bit-for-bit.
  CHECK(jet_pow(base, 2, 3).v == pow_value(base.v, 2, 3));
  CHECK(jet_pow(base, 3, 2).v == pow_value(base.v, 3, 2));
  CHECK(jet_pow(base, 7, 1).v == pow_value(base.v, 7, 1));
}

TEST_CASE("pow_value handles signs and exponent forms") {
  CHECK(pow_value(2.0, 10, 1) == 1024.0);
  CHECK(pow_value(-2.0, 3, 1) == -8.0);
  CHECK(pow_value(2.0, -2, 1) == 0.25);
  CHECK(pow_value(4.0, 1, 2) == 2.0);
  CHECK(rel_gap(pow_value(8.0, 1, 3), 2.0) <= 1e-15);
  CHECK(rel_gap(pow_value(8.0, -1, 3), 0.5) <= 1e-15);
}

TEST_CASE("domain errors raise JetError") {
  CHECK_THROWS_AS(jet_log(jet_const(0.0)), JetError);
  CHECK_THROWS_AS(jet_log(jet_const(-1.0)), JetError);
  CHECK_THROWS_AS(jet_sqrt(jet_const(0.0)), JetError);
  CHECK_THROWS_AS(jet_sqrt(jet_const(-2.0)), JetError);
  CHECK_THROWS_AS(jet_pow(jet_const(0.0), -1, 1), JetError);
  CHECK_THROWS_AS(jet_pow(jet_const(-1.0), 1, 2), JetError);
  CHECK_THROWS_AS(jet_pow(jet_const(-1.0), 2, 3), JetError);
  CHECK_THROWS_AS(jet_pow(jet_const(2.0), 1, 0), JetError);
  CHECK_THROWS_AS(jet_pow(jet_const(2.0), 1, -2), JetError);
}

TEST_CASE("elementary functions match their scalar values exactly") {
  const Jet3 a = jet_var(0, 0.9) + 0.3 * jet_var(1, -0.2);
  CHECK(jet_sin(a).v == std::sin(a.v));
  CHECK(jet_cos(a).v == std::cos(a.v));
  CHECK(jet_sinh(a).v == std::sinh(a.v));
  CHECK(jet_cosh(a).v == std::cosh(a.v));
  CHECK(jet_exp(a).v == std::exp(a.v));
  CHECK(jet_log(a).v == std::log(a.v));
  CHECK(jet_sqrt(a).v == std::sqrt(a.v));
}
