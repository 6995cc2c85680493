#include "grw/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace grw {

namespace {

struct SceneError : GeometryError {
  using GeometryError::GeometryError;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw SceneError("scene line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
};
using Section = std::map<std::string, Entry>;

double parse_num(const Entry& e, const std::string& key) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(e.value, &used);
  } catch (const std::exception&) {
    fail(e.line, "'" + key + "' is not a number: " + e.value);
  }
  if (trim(e.value.substr(used)) != "") {
    fail(e.line, "'" + key + "' has trailing text: " + e.value);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_num_token(const std::string& tok, int line, const std::string& key) {
  Entry e{tok, line};
  return parse_num(e, key);
}

void reject_unknown_keys(const Section& sec, const std::string& name,
                         const std::vector<std::string>& allowed) {
  for (const auto& [key, entry] : sec) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(entry.line, "unknown key '" + key + "' in [" + name + "]");
    }
  }
}

GallerySurface build_custom_surface(const Section& surf, const Section* st_sec,
                                    int surf_line) {
  reject_unknown_keys(surf, "surface", {"components", "domain"});
  if (!surf.count("domain")) {
    fail(surf_line, "an explicit immersion needs a 'domain' key");
  }
  if (st_sec == nullptr) {
    fail(surf_line, "an explicit immersion needs a [spacetime] section");
  }

  const Entry& comp = surf.at("components");
  std::vector<std::string> components = split(comp.value, ',');
  for (const std::string& c : components) {
    if (c.empty()) fail(comp.line, "empty component expression");
  }
  if (components.size() < 3) {
    fail(comp.line, "an immersion needs at least 3 components (time plus a 2-dimensional fiber)");
  }

  const Entry& dom = surf.at("domain");
  std::vector<std::string> dt = split_ws(dom.value);
  Domain domain;
  if (!dt.empty() && lower(dt[0]) == "rect" && dt.size() == 5) {
    domain = Domain::rect(parse_num_token(dt[1], dom.line, "domain"),
                          parse_num_token(dt[2], dom.line, "domain"),
                          parse_num_token(dt[3], dom.line, "domain"),
                          parse_num_token(dt[4], dom.line, "domain"));
    if (!(domain.x0 < domain.x1) || !(domain.y0 < domain.y1)) {
      fail(dom.line, "rectangle bounds must satisfy x0 < x1 and y0 < y1");
    }
  } else if (!dt.empty() && lower(dt[0]) == "disk" && dt.size() == 4) {
    const double r = parse_num_token(dt[3], dom.line, "domain");
    if (!(r > 0)) fail(dom.line, "disk radius must be positive");
    domain = Domain::disk(Eigen::Vector2d(parse_num_token(dt[1], dom.line, "domain"),
                                          parse_num_token(dt[2], dom.line, "domain")),
                          r);
  } else {
    fail(dom.line, "domain must be 'rect x0 y0 x1 y1' or 'disk cx cy radius'");
  }

  const Section& st = *st_sec;
  reject_unknown_keys(st, "spacetime", {"f", "t_min", "t_max", "fiber"});
  if (!st.count("f")) {
    fail(surf_line, "the [spacetime] section needs a warping expression 'f'");
  }
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  if (st.count("t_min")) t_min = parse_num(st.at("t_min"), "t_min");
  if (st.count("t_max")) t_max = parse_num(st.at("t_max"), "t_max");

  FiberKind kind = FiberKind::Euclidean;
  int dim = static_cast<int>(components.size()) - 1;
  double curvature = 0;
  if (st.count("fiber")) {
    const Entry& fe = st.at("fiber");
    std::vector<std::string> ft = split_ws(fe.value);
    if (ft.size() < 2 || ft.size() > 3) {
      fail(fe.line, "fiber must be 'kind dim [curvature]'");
    }
    const std::string k = lower(ft[0]);
    if (k == "euclidean") {
      kind = FiberKind::Euclidean;
    } else if (k == "sphere") {
      kind = FiberKind::Sphere;
      curvature = 1;
    } else if (k == "hyperbolic") {
      kind = FiberKind::Hyperbolic;
      curvature = -1;
    } else {
      fail(fe.line, "fiber kind must be euclidean, sphere, or hyperbolic");
    }
    dim = static_cast<int>(parse_num_token(ft[1], fe.line, "fiber"));
    if (ft.size() == 3) curvature = parse_num_token(ft[2], fe.line, "fiber");
    if (dim != static_cast<int>(components.size()) - 1) {
      fail(fe.line, "fiber dimension must be one less than the component count");
    }
  }

  auto spacetime = std::make_shared<GRWSpacetime>(
      make_spacetime(make_warping(st.at("f").value, t_min, t_max),
                     make_fiber(kind, dim, curvature)));

  GallerySurface out;
  out.name = "custom";
  out.summary = "user-defined immersion";
  out.immersion = make_immersion(components, domain, spacetime);
  return out;
}

void apply_run_section(const Section& run, SceneConfig& sc) {
  reject_unknown_keys(run, "run",
                      {"grid", "frac", "tol", "tol_sectional", "stationary_tol",
                       "checks", "alpha", "r", "r_list", "h", "center", "mode"});
  if (run.count("grid")) {
    const Entry& e = run.at("grid");
    std::vector<std::string> parts = split(lower(e.value), 'x');
    if (parts.empty() || parts.size() > 2) fail(e.line, "grid must be N or NxM");
    int n = 0;
    for (const std::string& p : parts) {
      const double v = parse_num_token(p, e.line, "grid");
      if (v < 2 || v != std::floor(v)) {
        fail(e.line, "grid sizes must be integers >= 2");
      }
      n = std::max(n, static_cast<int>(v));
    }
    sc.options.grid = n;
  }
  const auto positive = [&](const char* key, double& slot) {
    if (!run.count(key)) return;
    const double v = parse_num(run.at(key), key);
    if (!(v > 0)) fail(run.at(key).line, std::string("'") + key + "' must be positive");
    slot = v;
  };
  positive("frac", sc.options.frac);
  if (run.count("frac") && sc.options.frac > 1.0) {
    fail(run.at("frac").line, "'frac' must lie in (0, 1]");
  }
  positive("tol", sc.options.tol);
  positive("tol_sectional", sc.options.tol_sectional);
  positive("stationary_tol", sc.options.stationary_tol);
  positive("alpha", sc.witness_alpha);
  positive("r", sc.cap_r);
  positive("h", sc.cap_h);

  if (run.count("checks")) {
    const Entry& e = run.at("checks");
    for (const std::string& tok : split(e.value, ',')) {
      const std::string t = lower(tok);
      const auto& names = check_names();
      if (std::find(names.begin(), names.end(), t) == names.end()) {
        fail(e.line, "unknown check '" + tok + "'");
      }
      sc.checks.push_back(t);
    }
  }
  if (run.count("r_list")) {
    const Entry& e = run.at("r_list");
    for (const std::string& tok : split(e.value, ',')) {
      const double v = parse_num_token(tok, e.line, "R_list");
      if (!sc.cap_R_list.empty() && !(v > sc.cap_R_list.back())) {
        fail(e.line, "R_list must be strictly increasing");
      }
      sc.cap_R_list.push_back(v);
    }
    if (!sc.cap_R_list.empty() && !(sc.cap_R_list.front() > sc.cap_r)) {
      fail(e.line, "every R in R_list must exceed the inner radius r");
    }
  }
  if (run.count("center")) {
    const Entry& e = run.at("center");
    std::vector<std::string> ct = split_ws(e.value);
    if (ct.size() != 2) fail(e.line, "center must be 'cx cy'");
    sc.cap_center = Eigen::Vector2d(parse_num_token(ct[0], e.line, "center"),
                                    parse_num_token(ct[1], e.line, "center"));
  }
  if (run.count("mode")) {
    const Entry& e = run.at("mode");
    const std::string m = lower(e.value);
    if (m == "geodesic") {
      sc.cap_mode = RadiusMode::Geodesic;
    } else if (m == "parameter") {
      sc.cap_mode = RadiusMode::Parameter;
    } else {
      fail(e.line, "mode must be 'geodesic' or 'parameter'");
    }
  }
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "gradient",      "laplacian",   "dlogu_warp",   "dlogu_fiber",
      "dlogu_constu",  "sectional",   "gauss",        "witness_super",
      "witness_sub",   "holo"};
  return names;
}

SceneConfig parse_scene_text(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_line;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      current = lower(trim(line.substr(1, line.size() - 2)));
      if (current != "surface" && current != "spacetime" && current != "run") {
        fail(lineno, "unknown section [" + current + "]");
      }
      if (sections.count(current)) fail(lineno, "duplicate section [" + current + "]");
      sections[current];
      section_line[current] = lineno;
      continue;
    }
    if (current.empty()) fail(lineno, "key outside of any section");
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");
    if (sections[current].count(key)) {
      fail(lineno, "duplicate key '" + key + "' in [" + current + "]");
    }
    sections[current][key] = Entry{value, lineno};
  }

  if (!sections.count("surface")) {
    throw SceneError("scene: missing [surface] section");
  }
  const Section& surf = sections.at("surface");
  const int surf_line = section_line.at("surface");
  const bool has_gallery = surf.count("gallery") > 0;
  const bool has_components = surf.count("components") > 0;
  if (has_gallery == has_components) {
    fail(surf_line, "the [surface] section needs exactly one of 'gallery' or 'components'");
  }

  SceneConfig sc;
  if (has_gallery) {
    reject_unknown_keys(surf, "surface", {"gallery", "graph", "t0", "extent"});
    if (sections.count("spacetime")) {
      fail(section_line.at("spacetime"),
           "gallery surfaces carry their own spacetime; remove the [spacetime] section");
    }
    GalleryOptions opt;
    if (surf.count("graph")) opt.graph_expr = surf.at("graph").value;
    if (surf.count("t0")) opt.slice_t0 = parse_num(surf.at("t0"), "t0");
    if (surf.count("extent")) {
      const double v = parse_num(surf.at("extent"), "extent");
      if (!(v > 0)) fail(surf.at("extent").line, "'extent' must be positive");
      opt.extent = v;
    }
    sc.surface = make_surface(surf.at("gallery").value, opt);
    sc.name = sc.surface.name;
  } else {
    const Section* st =
        sections.count("spacetime") ? &sections.at("spacetime") : nullptr;
    sc.surface = build_custom_surface(surf, st, surf_line);
    sc.name = sc.surface.name;
  }

  if (sections.count("run")) apply_run_section(sections.at("run"), sc);
  return sc;
}

SceneConfig load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("scene: cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene_text(buf.str());
}

}  // namespace grw
