// Command-line front end: loads a scene file, runs identity checks, capacity
// scans, and hypothesis reports, and writes JSON/CSV result documents.
//
// Exit codes: 0 when every requested check passes, 2 when any check fails,
// 1 on usage or configuration errors. Hypothesis reports inform rather than
// judge, so `theorem` exits 0 even when hypotheses fail on the sample.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grw/report.hpp"
#include "grw/scene.hpp"

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_grid_spec(const std::string& spec) {
  int n = 0;
  for (const std::string& part : split_tokens([&] {
         std::string s = spec;
         for (char& c : s) {
           if (c == 'x' || c == 'X') c = ',';
         }
         return s;
       }())) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw UsageError("--grid expects N or NxM with integers >= 2");
    }
    if (used != part.size() || v < 2) {
      throw UsageError("--grid expects N or NxM with integers >= 2");
    }
    n = std::max(n, v);
  }
  if (n == 0) throw UsageError("--grid expects N or NxM with integers >= 2");
  return n;
}

std::vector<double> parse_radius_list(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& part : split_tokens(spec)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("--R-list expects comma-separated numbers");
    }
    if (used != part.size()) {
      throw UsageError("--R-list expects comma-separated numbers");
    }
    out.push_back(v);
  }
  return out;
}

// Residual-report wrapper for the holomorphic-data diagnostic, so it slots
// into the same report document as the pointwise checks.
grw::ResidualReport run_holo_check() {
  std::vector<std::complex<double>> zs;
  zs.emplace_back(0.0, 0.0);
  for (int k = 0; k < 10; ++k) {
    const double rad = 2.0 * (k + 0.5) / 10.0;
    for (int j = 0; j < 16; ++j) {
      const double th = 2.0 * 3.14159265358979323846 * j / 16.0;
      zs.emplace_back(rad * std::cos(th), rad * std::sin(th));
    }
  }
  const grw::HolomorphicCheck hc = grw::holomorphic_check(zs);
  grw::ResidualReport rep;
  rep.check = "holo";
  rep.tol = 1e-12;
  rep.lhs = hc.max_null_residual;
  rep.rhs = hc.max_conformal_residual;
  rep.residual = std::max(hc.max_null_residual, hc.max_conformal_residual);
  rep.pass = rep.residual <= rep.tol;
  rep.points = static_cast<int>(zs.size());
  rep.note =
      "null condition and conformal factor of the component derivatives at " +
      std::to_string(zs.size()) + " sample points";
  return rep;
}

int run_verify(const grw::SceneConfig& scene_in, const std::string& checks_arg,
               const std::string& grid_arg, double tol_arg,
               const std::string& out_path) {
  grw::SceneConfig sc = scene_in;
  if (!grid_arg.empty()) sc.options.grid = parse_grid_spec(grid_arg);
  if (tol_arg > 0) sc.options.tol = tol_arg;

  std::vector<std::string> tokens = sc.checks;
  if (!checks_arg.empty()) {
    tokens = split_tokens(checks_arg);
    const auto& names = grw::check_names();
    for (const std::string& t : tokens) {
      if (std::find(names.begin(), names.end(), t) == names.end()) {
        throw UsageError("unknown check '" + t + "'");
      }
    }
  }

  const grw::Immersion& im = sc.surface.immersion;
  std::vector<grw::ResidualReport> results;
  std::vector<grw::WitnessReport> witnesses;

  if (tokens.empty()) {
    // Default set: every check whose precondition holds, the proof witnesses
    // when the surface is stationary, and the holomorphic diagnostic for the
    // surface built from holomorphic data.
    results = grw::run_identity_suite(im, sc.options);
    try {
      witnesses.push_back(grw::superharmonic_witness(im, sc.witness_alpha, sc.options));
      witnesses.push_back(grw::subharmonic_witness(im, sc.witness_alpha, sc.options));
    } catch (const grw::PreconditionError&) {
      witnesses.clear();
    }
    if (sc.name == "enneper_l4") results.push_back(run_holo_check());
  } else {
    for (const std::string& t : tokens) {
      if (t == "gradient") {
        results.push_back(grw::check_gradient(im, sc.options));
      } else if (t == "laplacian") {
        results.push_back(grw::check_laplacian_u(im, sc.options));
      } else if (t == "dlogu_warp") {
        results.push_back(grw::check_dlog(im, grw::DlogForm::Warp, sc.options));
      } else if (t == "dlogu_fiber") {
        results.push_back(grw::check_dlog(im, grw::DlogForm::Fiber, sc.options));
      } else if (t == "dlogu_constu") {
        results.push_back(grw::check_dlog(im, grw::DlogForm::ConstantU, sc.options));
      } else if (t == "sectional") {
        results.push_back(grw::check_sectional(im, sc.options));
      } else if (t == "gauss") {
        results.push_back(grw::check_gauss(im, sc.options));
      } else if (t == "witness_super") {
        witnesses.push_back(grw::superharmonic_witness(im, sc.witness_alpha, sc.options));
      } else if (t == "witness_sub") {
        witnesses.push_back(grw::subharmonic_witness(im, sc.witness_alpha, sc.options));
      } else if (t == "holo") {
        results.push_back(run_holo_check());
      }
    }
  }

  bool all = true;
  for (const auto& r : results) {
    std::printf("%s  %-13s residual %.3e (tol %.1e)  %s\n",
                r.pass ? "PASS" : "FAIL", r.check.c_str(), r.residual, r.tol,
                r.note.c_str());
    all = all && r.pass;
  }
  for (const auto& w : witnesses) {
    std::printf("%s  %-13s alpha %.3g residual %.3e (tol %.1e)  %s\n",
                w.pass ? "PASS" : "FAIL", w.name.c_str(), w.alpha,
                w.max_formula_residual, w.tol, w.note.c_str());
    all = all && w.pass;
  }

  grw::write_text_file(out_path,
                       grw::verify_report_json(sc.name, results, witnesses));
  std::printf("%s: %zu checks, %s -> %s\n", sc.name.c_str(),
              results.size() + witnesses.size(), all ? "all pass" : "FAILURES",
              out_path.c_str());
  return all ? 0 : 2;
}

int run_capacity(const grw::SceneConfig& scene_in, double r_arg,
                 const std::string& rlist_arg, double h_arg,
                 const std::string& out_path) {
  grw::SceneConfig sc = scene_in;
  if (r_arg > 0) sc.cap_r = r_arg;
  if (h_arg > 0) sc.cap_h = h_arg;
  if (!rlist_arg.empty()) sc.cap_R_list = parse_radius_list(rlist_arg);
  if (sc.cap_R_list.empty()) {
    throw UsageError("capacity needs outer radii (--R-list or the scene's R_list)");
  }

  const grw::ScanResult scan =
      grw::parabolicity_scan(sc.surface.immersion, sc.cap_center, sc.cap_r,
                             sc.cap_R_list, sc.cap_h, sc.cap_mode);
  for (const auto& p : scan.points) {
    std::printf("cap(%.6g, %.6g) = %.8g  (%d dofs, residual %.1e)\n", p.r, p.R,
                p.capacity, p.dofs, p.residual);
  }
  std::printf("verdict: %s — %s\n", scan.verdict.c_str(), scan.note.c_str());
  grw::write_text_file(out_path, grw::capacity_csv(scan.points));
  return 0;
}

int run_theorem(const grw::SceneConfig& sc, const std::string& id_arg,
                const std::string& out_path) {
  const grw::TheoremId id = grw::parse_theorem_id(id_arg);
  const grw::HypothesisReport rep =
      grw::hypothesis_report(sc.surface.immersion, id, sc.options);
  for (const auto& item : rep.items) {
    const char* tag = item.status == grw::HypothesisItem::Status::Holds ? "holds"
                      : item.status == grw::HypothesisItem::Status::Fails
                          ? "FAILS"
                          : "indeterminate";
    std::printf("%-28s %-13s %s\n", item.name.c_str(), tag, item.note.c_str());
  }
  std::printf("conclusion: %s\n", rep.conclusion.c_str());
  grw::write_text_file(out_path, grw::theorem_report_json(sc.name, rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extrinsic geometry of spacelike surfaces in generalized "
               "Robertson-Walker spacetimes"};
  app.require_subcommand(1);

  CLI::App* gallery = app.add_subcommand("gallery", "built-in surfaces");
  gallery->require_subcommand(1);
  gallery->add_subcommand("list", "list the built-in surfaces");

  std::string v_scene, v_checks, v_grid, v_out;
  double v_tol = -1;
  CLI::App* verify =
      app.add_subcommand("verify", "run identity checks on a scene");
  verify->add_option("--scene", v_scene, "scene file")->required();
  verify->add_option("--checks", v_checks, "comma-separated check names");
  verify->add_option("--grid", v_grid, "sample resolution N or NxM");
  verify->add_option("--tol", v_tol, "residual tolerance");
  verify->add_option("--out", v_out, "output JSON path")->required();

  std::string c_scene, c_rlist, c_out;
  double c_r = -1, c_h = -1;
  CLI::App* capacity =
      app.add_subcommand("capacity", "annulus capacity scan on a scene");
  capacity->set_help_flag("--help", "print help");
  capacity->add_option("--scene", c_scene, "scene file")->required();
  capacity->add_option("--r", c_r, "inner radius");
  capacity->add_option("--R-list", c_rlist, "comma-separated outer radii");
  capacity->add_option("--h", c_h, "target mesh spacing");
  capacity->add_option("--out", c_out, "output CSV path")->required();

  std::string t_scene, t_id, t_out;
  CLI::App* theorem =
      app.add_subcommand("theorem", "sampled hypothesis report for a statement");
  theorem->add_option("--scene", t_scene, "scene file")->required();
  theorem->add_option("--id", t_id, "statement id (role name or compat id)")
      ->required();
  theorem->add_option("--out", t_out, "output JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gallery->parsed()) {
      for (const auto& [name, summary] : grw::list_surfaces()) {
        std::printf("%-18s %s\n", name.c_str(), summary.c_str());
      }
      return 0;
    }
    if (verify->parsed()) {
      return run_verify(grw::load_scene(v_scene), v_checks, v_grid, v_tol, v_out);
    }
    if (capacity->parsed()) {
      return run_capacity(grw::load_scene(c_scene), c_r, c_rlist, c_h, c_out);
    }
    if (theorem->parsed()) {
      return run_theorem(grw::load_scene(t_scene), t_id, t_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const grw::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
