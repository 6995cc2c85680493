#pragma once
// Pointwise identity checks for spacelike surfaces: gradient and Laplacian
// formulas for u = -<T_nor, T_nor>, curvature comparisons, superharmonic /
// subharmonic proof witnesses, and sampled hypothesis reports for the
// rigidity and curvature-bound statements.
//
// Residual convention: |lhs - rhs| is taken absolutely while the operand
// magnitude stays below 10, and relative to (magnitude / 10) beyond, so a
// single tolerance covers both small and large values.

#include <optional>
#include <string>
#include <vector>

#include "grw/surface.hpp"

namespace grw {

// A check whose mathematical precondition (stationarity, constant u) fails on
// the sampled surface throws this instead of producing a bogus verdict.
struct PreconditionError : GeometryError {
  using GeometryError::GeometryError;
};

struct CheckOptions {
  int grid = 9;                  // sample resolution (about grid^2 points)
  double frac = 0.9;             // fraction of the domain radius sampled
  double tol = 1e-6;             // scaled-residual tolerance
  double tol_sectional = 1e-5;   // tolerance for finite-difference comparisons
  double stationary_tol = 1e-7;  // max |H| admitted by stationary preconditions
};

double scaled_residual(double lhs, double rhs);

// Deterministic sample of the domain: tensor grid on rectangles; center plus
// rings with quadratically spaced radii on disks (clustering toward the
// center, where pointwise bounds on u tend to be active).
std::vector<Eigen::Vector2d> sample_grid(const Immersion& im, int n, double frac);

struct ResidualReport {
  std::string check;
  bool pass = false;
  double residual = 0;  // worst scaled residual over the sample
  double tol = 0;
  double lhs = 0, rhs = 0;  // values at the worst point
  Eigen::Vector2d worst_point{0, 0};
  int points = 0;
  std::string note;
};

// grad u = 2 A_{T_nor} T_tan, its squared form, and (when the surface is
// stationary) the trace form |grad u|^2 = 2 tr(A^2) |T_tan|^2.
ResidualReport check_gradient(const Immersion& im, const CheckOptions& opt = {});

// Stationary only: Delta u = 2 (K - f''/f) |T_tan|^2 + 2 tr(A^2_{T_nor}).
ResidualReport check_laplacian_u(const Immersion& im, const CheckOptions& opt = {});

enum class DlogForm {
  Warp,      // Delta log u via K and f''/f            (stationary)
  Fiber,     // Delta log u via K, f', K_M, all normals (stationary)
  ConstantU  // constant u: K - (f'^2+K_M)/f^2 <= 0, equality iff geodesic
};
ResidualReport check_dlog(const Immersion& im, DlogForm form,
                          const CheckOptions& opt = {});

// Closed-form sectional curvature of the tangent plane vs an independent
// finite-difference evaluation of the ambient curvature tensor.
ResidualReport check_sectional(const Immersion& im, const CheckOptions& opt = {});

// Stationary only: intrinsic curvature (metric jets) vs the curvature
// recovered from the ambient sectional curvature and the shape operators.
ResidualReport check_gauss(const Immersion& im, const CheckOptions& opt = {});

// Every check whose precondition holds on the sampled surface.
std::vector<ResidualReport> run_identity_suite(const Immersion& im,
                                               const CheckOptions& opt = {});

// Proof witnesses: h = (1+u)^{-alpha} and v = -(1+u)^{-alpha}. Each verifies
// the displayed Laplacian against a direct divergence-form evaluation, the
// sign of the auxiliary quantity theta on its admissible set, and the
// claimed sign of the Laplacian where the pointwise hypotheses hold.
struct WitnessReport {
  std::string name;  // "superharmonic" or "subharmonic"
  double alpha = 0;
  bool pass = false;
  double max_formula_residual = 0;  // direct vs displayed Laplacian
  Eigen::Vector2d worst_point{0, 0};
  double min_theta = 0;    // superharmonic: min theta over admissible samples
  double worst_sign = 0;   // worst signed Laplacian where the sign claim applies
  int admissible_points = 0;  // samples satisfying the pointwise bound on u
  int sign_points = 0;        // samples where the sign claim applies
  double tol = 0;
  std::string note;
};
WitnessReport superharmonic_witness(const Immersion& im, double alpha,
                                    const CheckOptions& opt = {});
WitnessReport subharmonic_witness(const Immersion& im, double alpha,
                                  const CheckOptions& opt = {});

// Growth of u against C (f^2 + 1): the fitted constant over the full sample,
// over the inner half radius, and whether the fit keeps growing with the
// sampled radius (ratio >= 2), which flags the bound as failing globally.
struct GrowthFit {
  double fitted_c = 0;
  double half_c = 0;
  double ratio = 1;
  bool fails_globally = false;
  Eigen::Vector2d worst_point{0, 0};
};
GrowthFit fit_growth_constant(const Immersion& im, const CheckOptions& opt = {});

enum class TheoremId {
  RigidityMain,           // stationary + curvature >= threshold + growth bound
  RigidityBounded,        // same with u bounded
  RigidityStatic,         // static ambient version
  CurvatureBound,         // curvature estimate + equality case
  CurvatureBoundBounded,  // same with u bounded
};

TheoremId parse_theorem_id(const std::string& token);  // role name or compat id
std::string theorem_role_name(TheoremId id);
std::string theorem_compat_id(TheoremId id);

struct HypothesisItem {
  std::string name;
  enum class Status { Holds, Fails, Indeterminate } status = Status::Indeterminate;
  double margin = 0;  // signed margin where meaningful (>= 0 supports Holds)
  Eigen::Vector2d worst_point{0, 0};
  std::string note;
};

struct HypothesisReport {
  TheoremId theorem;
  std::string theorem_name;
  std::string compat_id;
  std::vector<HypothesisItem> items;
  double max_sigma = 0;       // conclusion data: max |sigma| over the sample
  double max_eqk = 0;         // max of K - (f'^2+K_M)/f^2 over the sample
  std::optional<GrowthFit> growth;
  std::string conclusion;
};
HypothesisReport hypothesis_report(const Immersion& im, TheoremId id,
                                   const CheckOptions& opt = {});

}  // namespace grw
