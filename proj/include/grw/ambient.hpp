#pragma once
// Generalized Robertson-Walker ambient spacetimes: a negative-definite time
// axis warped over a space form fiber,  <,> = -dt^2 + f(t)^2 g_M,  with the
// fiber carried in a single conformally flat chart
//   g_M = lambda(p)^2 delta,   lambda(p) = 1 / (1 + (c/4)|p|^2).
// Coordinate 0 is time; fiber coordinates follow. Signature (-,+,...,+).

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "grw/expr.hpp"

namespace grw {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WarpingFunction {
  ExprAst expr;  // one variable, "t"
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
};

WarpingFunction make_warping(std::string_view text,
                             double t_min = -std::numeric_limits<double>::infinity(),
                             double t_max = std::numeric_limits<double>::infinity());

// f, f', f'' at t; checks t lies in the open interval and f > 0.
struct WarpValues {
  double f = 1.0, fp = 0.0, fpp = 0.0;
};
WarpValues warp_eval(const WarpingFunction& w, double t);

// Full jet of f composed with a parameter-dependent time coordinate.
Jet3 warp_jet(const WarpingFunction& w, const Jet3& tau);

enum class FiberKind { Euclidean, Sphere, Hyperbolic };

struct FiberModel {
  FiberKind kind = FiberKind::Euclidean;
  int dim = 2;           // m >= 2
  double curvature = 0;  // 0 / +c / -c matching kind
};

FiberModel make_fiber(FiberKind kind, int dim, double curvature);

// lambda(p); checks the chart bound for curved fibers (|p|^2 < 4/|c|).
double conformal_lambda(const FiberModel& fiber, const Eigen::VectorXd& p);

struct GRWSpacetime {
  WarpingFunction warping;
  FiberModel fiber;
  bool is_static = false;      // warping expression is the constant 1
  int n() const { return fiber.dim + 1; }
};

GRWSpacetime make_spacetime(WarpingFunction warping, FiberModel fiber);

// Full metric matrix at an ambient point x = (t, p).
Eigen::MatrixXd metric_at(const GRWSpacetime& st, const Eigen::VectorXd& x);

// Christoffel symbols, closed form: result[k](i,j) = Gamma^k_ij.
std::vector<Eigen::MatrixXd> connection_coeffs_at(const GRWSpacetime& st,
                                                  const Eigen::VectorXd& x);

// Sectional curvature of span{X, Y} at x, via Richardson-extrapolated central
// finite differences of the Christoffel symbols (base step 1e-4).
double ambient_sectional(const GRWSpacetime& st, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

// Ambient inner product of tangent vectors at x.
double ambient_inner(const GRWSpacetime& st, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace grw
