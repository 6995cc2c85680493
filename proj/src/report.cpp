#include "grw/report.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace grw {

namespace {

using nlohmann::json;

json point_json(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }

json check_json(const ResidualReport& r) {
  json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["residual"] = r.residual;
  j["tol"] = r.tol;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["worst_point"] = point_json(r.worst_point);
  j["points"] = r.points;
  j["note"] = r.note;
  return j;
}

json witness_json(const WitnessReport& w) {
  json j;
  j["name"] = w.name;
  j["alpha"] = w.alpha;
  j["pass"] = w.pass;
  j["max_formula_residual"] = w.max_formula_residual;
  j["worst_point"] = point_json(w.worst_point);
  j["min_theta"] = w.min_theta;
  j["worst_sign"] = w.worst_sign;
  j["admissible_points"] = w.admissible_points;
  j["sign_points"] = w.sign_points;
  j["tol"] = w.tol;
  j["note"] = w.note;
  return j;
}

const char* status_name(HypothesisItem::Status s) {
  switch (s) {
    case HypothesisItem::Status::Holds:
      return "holds";
    case HypothesisItem::Status::Fails:
      return "fails";
    case HypothesisItem::Status::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::string format_csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace

std::string verify_report_json(const std::string& scene_name,
                               const std::vector<ResidualReport>& checks,
                               const std::vector<WitnessReport>& witnesses) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "verify";
  doc["scene"] = scene_name;
  doc["checks"] = json::array();
  for (const ResidualReport& r : checks) doc["checks"].push_back(check_json(r));
  doc["witnesses"] = json::array();
  for (const WitnessReport& w : witnesses) doc["witnesses"].push_back(witness_json(w));
  bool all = true;
  for (const ResidualReport& r : checks) all = all && r.pass;
  for (const WitnessReport& w : witnesses) all = all && w.pass;
  doc["all_pass"] = all;
  return doc.dump(2) + "\n";
}

std::string theorem_report_json(const std::string& scene_name,
                                const HypothesisReport& rep) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "theorem";
  doc["scene"] = scene_name;
  doc["theorem"] = rep.theorem_name;
  doc["compat_id"] = rep.compat_id;
  doc["hypotheses"] = json::array();
  for (const HypothesisItem& it : rep.items) {
    json j;
    j["name"] = it.name;
    j["status"] = status_name(it.status);
    j["margin"] = it.margin;
    j["worst_point"] = point_json(it.worst_point);
    j["note"] = it.note;
    doc["hypotheses"].push_back(j);
  }
  if (rep.growth) {
    json g;
    g["fitted_c"] = rep.growth->fitted_c;
    g["half_c"] = rep.growth->half_c;
    g["ratio"] = rep.growth->ratio;
    g["fails_globally"] = rep.growth->fails_globally;
    doc["growth"] = g;
  }
  doc["max_sigma"] = rep.max_sigma;
  doc["max_eqk"] = rep.max_eqk;
  doc["conclusion"] = rep.conclusion;
  return doc.dump(2) + "\n";
}

std::string capacity_csv(const std::vector<CapacityResult>& points) {
  std::string out = "r,R,capacity,dofs,residual\n";
  for (const CapacityResult& c : points) {
    out += format_csv_number(c.r) + "," + format_csv_number(c.R) + "," +
           format_csv_number(c.capacity) + "," + std::to_string(c.dofs) + "," +
           format_csv_number(c.residual) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError("cannot open output file " + path);
  out << content;
  if (!out) throw GeometryError("failed writing output file " + path);
}

}  // namespace grw
