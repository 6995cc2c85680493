#pragma once
// Built-in example surfaces, each packaged with its ambient spacetime and,
// where closed forms exist, oracle functions for u = -<T_nor, T_nor> and the
// intrinsic Gauss curvature. These are the fixtures every higher-level check
// runs against.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grw/surface.hpp"

namespace grw {

struct GalleryOptions {
  std::optional<std::string> graph_expr;  // graph family: defining function w(x,y)
  std::optional<double> slice_t0;         // slice family: time level
  std::optional<double> extent;           // domain radius override
};

struct GallerySurface {
  std::string name;
  std::string summary;
  Immersion immersion;
  // closed-form oracles in the surface parameters; empty when the surface has
  // no closed form (e.g. a user-supplied graph function)
  std::function<double(double, double)> u_oracle;
  std::function<double(double, double)> k_oracle;
};

// (name, one-line summary) for every built-in surface.
std::vector<std::pair<std::string, std::string>> list_surfaces();

GallerySurface make_surface(const std::string& name, const GalleryOptions& opt = {});

// Diagnostics for the holomorphic representation of enneper_l4: the component
// derivatives phi_k(z) must satisfy the null condition
//   -phi1^2 + phi2^2 + phi3^2 + phi4^2 = 0
// and reproduce the conformal factor,
//   -|phi1|^2 + |phi2|^2 + |phi3|^2 + |phi4|^2 = 2 (1 + |z|^2)^2.
// Both residuals should sit at machine precision.
struct HolomorphicCheck {
  double max_null_residual = 0;
  double max_conformal_residual = 0;
};
HolomorphicCheck holomorphic_check(const std::vector<std::complex<double>>& zs);

}  // namespace grw
