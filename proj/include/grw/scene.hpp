#pragma once
// Scene configuration files: a small INI-style format that selects either a
// built-in gallery surface (with optional parameters) or a user-defined
// immersion over an explicit spacetime, plus run defaults for the checks and
// capacity scans. Format:
//
//   # comment
//   [surface]
//   gallery = graph_w          # one of the built-in names, ...
//   graph = x^2-y^2            #   optional parameters (graph / t0 / extent)
//   # ... or an explicit immersion:
//   # components = t-expr, x1-expr, x2-expr, x3-expr
//   # domain = rect -2 -2 2 2       (or: disk cx cy radius)
//
//   [spacetime]                # explicit immersions only
//   f = cosh(t)
//   t_min = -5
//   t_max = 5
//   fiber = sphere 3 1.0       # kind dim [curvature]
//
//   [run]                      # optional defaults, all overridable by flags
//   grid = 9x9
//   tol = 1e-6
//   checks = gradient, sectional
//   r = 1.0
//   R_list = 2, 4, 8, 16
//   h = 0.1
//   center = 0 0
//   mode = geodesic            # or: parameter
//   alpha = 1.0

#include <string>
#include <vector>

#include "grw/gallery.hpp"
#include "grw/identities.hpp"
#include "grw/parabolic.hpp"

namespace grw {

struct SceneConfig {
  std::string name;        // gallery name, or "custom"
  GallerySurface surface;  // immersion plus oracles when the surface has them
  CheckOptions options;
  std::vector<std::string> checks;  // empty: run every applicable check
  double witness_alpha = 1.0;
  double cap_r = 1.0;
  std::vector<double> cap_R_list;
  double cap_h = 0.1;
  Eigen::Vector2d cap_center{0, 0};
  RadiusMode cap_mode = RadiusMode::Geodesic;
};

// Valid tokens for the `checks` key and the --checks flag.
const std::vector<std::string>& check_names();

SceneConfig parse_scene_text(const std::string& text);
SceneConfig load_scene(const std::string& path);

}  // namespace grw
