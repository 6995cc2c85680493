#pragma once
// Spacelike immersed surfaces x : Sigma^2 -> GRW spacetime, given by n
// component expressions in two parameters (x, y). All derivative data comes
// from order-3 jets of the components, which is exactly enough for second
// derivatives of the induced metric and for divergence-form Laplacians of
// first-order quantities.

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <optional>

#include "grw/ambient.hpp"

namespace grw {

struct Domain {
  enum class Kind { Rect, Disk } kind = Kind::Rect;
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;  // rect
  Eigen::Vector2d center{0, 0};             // disk
  double radius = 1;
  bool contains(const Eigen::Vector2d& p) const;
  static Domain rect(double x0, double y0, double x1, double y1);
  static Domain disk(const Eigen::Vector2d& c, double r);
};

struct Immersion {
  std::vector<ExprAst> components;  // n expressions in (x, y)
  Domain domain;
  std::shared_ptr<const GRWSpacetime> spacetime;
  int n() const { return static_cast<int>(components.size()); }
};

Immersion make_immersion(std::vector<std::string> component_texts, Domain domain,
                         std::shared_ptr<const GRWSpacetime> st);

// Shared evaluation state at one parameter point.
struct SurfaceEval {
  Eigen::Vector2d p;
  std::shared_ptr<const GRWSpacetime> spacetime;
  std::vector<Jet3> X;    // order-3 jets of the ambient components
  Jet3 tau;               // = X[0]
  Jet3 fj;                // f(tau), order 3
  Jet3 g00, g01, g11;     // induced metric entries, valid to order 2
  Jet3 gi00, gi01, gi11;  // inverse metric entries, valid to order 2
  Jet3 detg;              // valid to order 2
  Jet3 u;                 // u = -<T_nor, T_nor>, valid to order 2
  double f, fp, fpp;
  Eigen::Matrix2d gmat;          // metric values
  Eigen::MatrixXd tangent;       // n x 2, columns d_x X, d_y X
  double metric_scale;           // f^2 lambda^2 at the point
};

SurfaceEval evaluate_surface(const Immersion& im, const Eigen::Vector2d& p);

std::vector<Jet3> evaluate_jets(const Immersion& im, const Eigen::Vector2d& p);
Eigen::Matrix2d induced_metric(const Immersion& im, const Eigen::Vector2d& p);

struct TDecomposition {
  Eigen::VectorXd T;      // f(tau) d_t
  Eigen::VectorXd T_tan;  // tangential part
  Eigen::VectorXd T_nor;  // normal part (timelike)
  double u = 0;           // -<T_nor, T_nor>
  double T_tan_sq = 0;    // <T_tan, T_tan>
};

struct PointFrame {
  Eigen::Matrix2d coeff;     // E_a = coeff(0,a) d_x X + coeff(1,a) d_y X
  Eigen::MatrixXd E;         // n x 2, ambient components of E1, E2
  Eigen::VectorXd xi_time;   // unit timelike normal, <xi,d_t> < 0
  Eigen::MatrixXd xi_space;  // n x (n-3) spacelike unit normals
};

TDecomposition decompose_T(const SurfaceEval& ev);
PointFrame normal_frame(const SurfaceEval& ev);

struct SecondFundamental {
  // sigma in the orthonormal tangent frame: entries E1E1, E1E2, E2E2
  std::array<Eigen::VectorXd, 3> sigma;
  Eigen::VectorXd H;  // mean curvature vector
};

SecondFundamental second_fundamental(const SurfaceEval& ev, const PointFrame& fr);

// Normal selector for the shape operator.
struct NormalSelector {
  enum class Which { TimelikeRaw, TimelikeUnit, Spacelike } which = Which::TimelikeRaw;
  int index = 0;  // for Spacelike
};

// Shape operator matrix in the orthonormal tangent frame:
// M_ab = <sigma(E_a, E_b), xi>.
Eigen::Matrix2d weingarten(const SurfaceEval& ev, const PointFrame& fr,
                           const SecondFundamental& sf, const TDecomposition& td,
                           NormalSelector sel);

// Intrinsic Gauss curvature from the induced-metric jets (Brioschi formula).
double gauss_curvature_intrinsic(const Immersion& im, const Eigen::Vector2d& p);
double gauss_curvature_intrinsic(const SurfaceEval& ev);

struct ScalarField {
  double value = 0;
  Eigen::Vector2d grad_frame{0, 0};  // components along E1, E2
  double grad_sq = 0;                // |grad|^2
  double lap = 0;                    // Laplace-Beltrami value
};

// Divergence-form Laplace-Beltrami data of a scalar jet (valid to order 2)
// assembled against the induced-metric jets in ev.
ScalarField laplace_beltrami(const SurfaceEval& ev, const Jet3& scalar,
                             const PointFrame* fr = nullptr);

struct ExtrinsicReport {
  Eigen::Vector2d p;
  double u = 0;
  Eigen::VectorXd T_tan, T_nor;
  Eigen::Vector2d T_tan_frame{0, 0};  // components of T_tan along E1, E2
  double T_tan_sq = 0;
  double grad_tau_sq = 0;          // from jets: g^{ab} tau_a tau_b
  std::array<Eigen::VectorXd, 3> sigma;
  Eigen::VectorXd H;
  double H_mag = 0;                // frame-Euclidean magnitude
  double sigma_mag = 0;            // frame-Euclidean magnitude, 0 iff sigma = 0
  Eigen::Matrix2d A_time;          // shape operator of T_nor (not unit)
  std::vector<Eigen::Matrix2d> A_space;
  double tr_A2_time = 0;
  std::vector<double> tr_A2_space;
  double sum_tr_A2_space = 0;
  double Kbar = 0;       // warp/fiber closed form
  double Kbar_fd = 0;    // finite-difference ambient sectional curvature
  double K_intrinsic = 0;
  double K_gauss = 0;    // from the Gauss equation
  Eigen::Vector2d grad_u_frame;
  double grad_u_sq = 0;
  double lap_u = 0;
  double lap_log_u = 0;
  double tau = 0, f = 1, fp = 0, fpp = 0;
};

ExtrinsicReport extrinsic_report(const Immersion& im, const Eigen::Vector2d& p);

}  // namespace grw
