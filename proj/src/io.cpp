#include "sheetgrasp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

namespace {

nlohmann::json json_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return nlohmann::json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

double get_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("missing or non-numeric field: ") + key);
  }
  return j.at(key).get<double>();
}

// Strip sub-picometre float noise from values that pass through unit
// conversions, so emitted files stay tidy and byte-stable.
double tidy(double v) { return std::round(v * 1e12) / 1e12; }

std::optional<double> opt_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_number()) {
    throw std::invalid_argument(std::string("non-numeric field: ") + key);
  }
  return j.at(key).get<double>();
}

Eigen::Vector2d point_mm(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x_mm, y_mm]");
  return {mm_to_m(j.at(0).get<double>()), mm_to_m(j.at(1).get<double>())};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

Material material_from_json(const nlohmann::json& j) {
  if (!j.contains("name") || !j.at("name").is_string()) {
    throw std::invalid_argument("material record needs a name");
  }
  return Material::from_gsm(
      j.at("name").get<std::string>(), get_number(j, "gsm"), get_number(j, "mu0"),
      get_number(j, "mu1"), opt_number(j, "width").value_or(kDefaultSheetWidth),
      opt_number(j, "youngs_modulus").value_or(kDefaultYoungsModulus),
      opt_number(j, "volumetric_density").value_or(kDefaultVolumetricDensity),
      opt_number(j, "thickness"),
      j.value("unvalidated", false));
}

nlohmann::ordered_json material_to_json(const Material& m) {
  nlohmann::ordered_json j;
  j["name"] = m.name;
  j["gsm"] = m.gsm;
  j["thickness"] = tidy(m.thickness);
  j["youngs_modulus"] = m.youngs_modulus;
  j["volumetric_density"] = m.volumetric_density;
  j["mu0"] = m.mu0;
  j["mu1"] = m.mu1;
  j["width"] = m.width;
  if (m.unvalidated) j["unvalidated"] = true;
  return j;
}

const Material& MaterialLibrary::find(const std::string& name) const {
  for (const auto& m : materials) {
    if (m.name == name) return m;
  }
  throw std::invalid_argument("material not in library: " + name);
}

bool MaterialLibrary::contains(const std::string& name) const {
  for (const auto& m : materials) {
    if (m.name == name) return true;
  }
  return false;
}

MaterialLibrary default_material_library() {
  // Paper grades: grammage is the identifier; thickness derives from a
  // common 500 kg/m^3 sheet density.  Friction pair and modulus calibrated
  // so the model workspaces match the benchmark observations (press cap
  // 230 g near the edge, 60 mm overhang safe up to 120 g).
  MaterialLibrary lib;
  struct Grade { const char* name; double gsm; };
  constexpr Grade grades[] = {
      {"copy_17", 17},        {"copy_35", 35},        {"printing_60", 60},
      {"printing_80", 80},    {"printing_100", 100},  {"printing_120", 120},
      {"cardboard_150", 150}, {"cardboard_200", 200}, {"cardboard_230", 230},
      {"cardboard_250", 250},
  };
  for (const auto& g : grades) {
    lib.materials.push_back(Material::from_gsm(g.name, g.gsm, 0.6, 0.42,
                                               kDefaultSheetWidth, 2e9, 500.0));
  }
  // Cloth-like presets: very low bending stiffness for their grammage.
  // No experimental backing; flagged unvalidated.
  lib.materials.push_back(Material::from_gsm("tablecloth", 180, 0.6, 0.50,
                                             kDefaultSheetWidth, 2e7, 360.0, 5e-4, true));
  lib.materials.push_back(Material::from_gsm("tissue", 15, 0.6, 0.45,
                                             kDefaultSheetWidth, 5e7, 150.0, 1e-4, true));
  return lib;
}

MaterialLibrary load_material_library(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("material library must be an array");
  MaterialLibrary lib;
  for (const auto& rec : j) lib.materials.push_back(material_from_json(rec));
  if (lib.materials.empty()) throw std::invalid_argument("material library is empty");
  return lib;
}

MaterialLibrary load_material_library_file(const std::string& path) {
  return load_material_library(json_from_file(path));
}

nlohmann::ordered_json material_library_to_json(const MaterialLibrary& lib) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& m : lib.materials) arr.push_back(material_to_json(m));
  return arr;
}

GripperModel gripper_from_json(const nlohmann::json& j) {
  GripperModel g;
  g.name = j.value("name", std::string("gripper"));
  g.W0 = mm_to_m(get_number(j, "W0_mm"));
  g.W1 = mm_to_m(get_number(j, "W1_mm"));
  g.Lf = mm_to_m(get_number(j, "Lf_mm"));
  g.Hmax = mm_to_m(get_number(j, "Hmax_mm"));
  g.tilt_min = 0.0;
  g.tilt_max = deg_to_rad(get_number(j, "tilt_max_deg"));
  g.validate();
  return g;
}

GripperModel load_gripper_file(const std::string& path) {
  return gripper_from_json(json_from_file(path));
}

nlohmann::ordered_json gripper_to_json(const GripperModel& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name;
  j["W0_mm"] = tidy(m_to_mm(g.W0));
  j["W1_mm"] = tidy(m_to_mm(g.W1));
  j["Lf_mm"] = tidy(m_to_mm(g.Lf));
  j["Hmax_mm"] = tidy(m_to_mm(g.Hmax));
  j["tilt_max_deg"] = tidy(rad_to_deg(g.tilt_max));
  return j;
}

Scene scene_from_json(const nlohmann::json& j, const MaterialLibrary& lib) {
  if (!j.contains("paper")) throw std::invalid_argument("scene: missing paper");
  const auto& paper = j.at("paper");
  if (!paper.contains("material_name")) throw std::invalid_argument("scene: paper needs material_name");
  const Material& mat = lib.find(paper.at("material_name").get<std::string>());

  Scene scene;
  if (paper.contains("corners_mm")) {
    const auto& c = paper.at("corners_mm");
    if (!c.is_array() || c.size() != 4) throw std::invalid_argument("scene: corners_mm needs 4 points");
    std::array<Eigen::Vector2d, 4> corners;
    for (int i = 0; i < 4; ++i) corners[i] = point_mm(c.at(i));
    scene.sheet = SheetInstance::from_corners(mat, corners);
  } else if (paper.contains("pose")) {
    const double length = mm_to_m(get_number(paper, "length_mm"));
    const double width = mm_to_m(get_number(paper, "width_mm"));
    const auto& p = paper.at("pose");
    const Pose2D pose{mm_to_m(get_number(p, "x_mm")), mm_to_m(get_number(p, "y_mm")),
                      deg_to_rad(get_number(p, "yaw_deg"))};
    scene.sheet = SheetInstance::from_pose(mat, length, width, pose);
  } else {
    throw std::invalid_argument("scene: paper needs corners_mm or pose");
  }

  if (j.contains("constraints")) {
    for (const auto& c : j.at("constraints")) {
      Constraint con;
      const std::string kind = c.value("kind", std::string());
      if (kind == "wall") {
        con.kind = ConstraintKind::wall;
      } else if (kind == "table_edge") {
        con.kind = ConstraintKind::table_edge;
      } else {
        throw std::invalid_argument("scene: constraint kind must be wall or table_edge");
      }
      const auto& seg = c.at("segment_mm");
      if (!seg.is_array() || seg.size() != 2) {
        throw std::invalid_argument("scene: segment_mm needs two points");
      }
      con.a = point_mm(seg.at(0));
      con.b = point_mm(seg.at(1));
      if (con.kind == ConstraintKind::wall) {
        con.height = mm_to_m(get_number(c, "height_mm"));
      } else {
        con.height = 0.0;
      }
      con.validate();
      scene.constraints.push_back(con);
    }
  }

  if (j.contains("table")) {
    scene.table_mu1 = opt_number(j.at("table"), "mu1");
  }
  return scene;
}

Scene load_scene_file(const std::string& path, const MaterialLibrary& lib) {
  return scene_from_json(json_from_file(path), lib);
}

nlohmann::ordered_json scene_to_json(const Scene& scene) {
  nlohmann::ordered_json j;
  j["paper"]["material_name"] = scene.sheet.material.name;
  j["paper"]["length_mm"] = m_to_mm(scene.sheet.length);
  j["paper"]["width_mm"] = m_to_mm(scene.sheet.width);
  j["paper"]["pose"] = {{"x_mm", m_to_mm(scene.sheet.pose.x)},
                        {"y_mm", m_to_mm(scene.sheet.pose.y)},
                        {"yaw_deg", rad_to_deg(scene.sheet.pose.yaw)}};
  j["constraints"] = nlohmann::ordered_json::array();
  for (const auto& c : scene.constraints) {
    nlohmann::ordered_json cj;
    cj["kind"] = c.kind == ConstraintKind::wall ? "wall" : "table_edge";
    cj["segment_mm"] = {{m_to_mm(c.a.x()), m_to_mm(c.a.y())},
                        {m_to_mm(c.b.x()), m_to_mm(c.b.y())}};
    if (c.kind == ConstraintKind::wall) cj["height_mm"] = m_to_mm(c.height);
    j["constraints"].push_back(cj);
  }
  if (scene.table_mu1) j["table"]["mu1"] = *scene.table_mu1;
  return j;
}

namespace {
nlohmann::ordered_json pose_to_json(const Pose2D& pose) {
  return {{"x_mm", tidy(m_to_mm(pose.x))},
          {"y_mm", tidy(m_to_mm(pose.y))},
          {"z_mm", tidy(m_to_mm(pose.z))},
          {"yaw_deg", tidy(rad_to_deg(pose.yaw))}};
}
}  // namespace

nlohmann::ordered_json plan_to_json(const GraspPlan& plan) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name(plan.strategy);
  j["verdict"] = plan.feasible ? "feasible" : "infeasible";
  if (!plan.feasible) {
    j["reason"] = reason_str(plan.reason);
    if (!plan.detail.empty()) j["detail"] = plan.detail;
  }
  j["margins"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : plan.margins) j["margins"][k] = v;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : plan.stages) {
    j["stages"].push_back({{"name", stage_name_str(s.name)},
                           {"pose_mm_deg", pose_to_json(s.pose)},
                           {"command", command_str(s.command)}});
  }
  if (plan.transform) {
    j["transform"] = {{"yaw_deg", tidy(rad_to_deg(plan.transform->angle()))},
                      {"t_mm",
                       {tidy(m_to_mm(plan.transform->translation().x())),
                        tidy(m_to_mm(plan.transform->translation().y())),
                        tidy(m_to_mm(plan.transform->dz()))}}};
  }
  return j;
}

const std::vector<std::string>& map_margin_columns() {
  static const std::vector<std::string> cols = {
      "friction_gap",         "buckling_margin_N",      "collision_clearance_m",
      "grasp_space_clearance_m", "contact_width_margin_m", "tilt_margin_rad",
      "bulge_height_m",       "deflection_clearance_m", "protrusion_margin_m",
  };
  return cols;
}

void write_map_csv(const FeasibilityMap& map, std::ostream& out) {
  for (const auto& a : map.axes) out << a.name << ",";
  out << "feasible,reason";
  for (const auto& c : map_margin_columns()) out << "," << c;
  out << ",estimate,in_workspace\n";

  for (const auto& cell : map.cells) {
    for (double c : cell.coordinates) out << format_double(c) << ",";
    out << (cell.feasible ? 1 : 0) << "," << reason_str(cell.reason);
    for (const auto& name : map_margin_columns()) {
      out << ",";
      const auto it = cell.margins.find(name);
      if (it != cell.margins.end()) out << format_double(it->second);
    }
    out << ",";
    if (cell.estimate) out << format_double(*cell.estimate);
    out << ",";
    if (cell.in_workspace) out << (*cell.in_workspace ? 1 : 0);
    out << "\n";
  }
}

void write_map_csv_file(const FeasibilityMap& map, const std::string& path) {
  std::ostringstream ss;
  write_map_csv(map, ss);
  write_text_file(path, ss.str());
}

nlohmann::ordered_json map_meta_json(const FeasibilityMap& map) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name(map.strategy);
  j["axes"] = nlohmann::ordered_json::array();
  for (const auto& a : map.axes) {
    j["axes"].push_back({{"name", a.name}, {"values", a.values}});
  }
  j["threshold"] = map.threshold;
  j["trials"] = map.trials;
  j["seed"] = map.seed;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& a : map.axes) cols.push_back(a.name);
  for (const char* c : {"feasible", "reason"}) cols.push_back(c);
  for (const auto& c : map_margin_columns()) cols.push_back(c);
  cols.push_back("estimate");
  cols.push_back("in_workspace");
  j["csv_columns"] = cols;
  return j;
}

void write_trace_csv(const ForceTrace& trace, std::ostream& out) {
  out << "time,stage,F_Z,F_Y,F_N_f,F_tau_f\n";
  for (const auto& s : trace.samples) {
    out << format_double(s.t) << "," << stage_name_str(s.stage) << ","
        << format_double(s.F_Z) << "," << format_double(s.F_Y) << ","
        << format_double(s.F_N_f) << "," << format_double(s.F_tau_f) << "\n";
  }
}

void write_trace_csv_file(const ForceTrace& trace, const std::string& path) {
  std::ostringstream ss;
  write_trace_csv(trace, ss);
  write_text_file(path, ss.str());
}

std::vector<DeflectionSample> load_deflection_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<DeflectionSample> samples;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line.find("length_mm") == std::string::npos ||
          line.find("deflection_mm") == std::string::npos) {
        throw std::invalid_argument("calibration CSV needs header length_mm,deflection_mm");
      }
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) {
      throw std::invalid_argument("calibration CSV: bad row: " + line);
    }
    samples.push_back({mm_to_m(std::stod(a)), mm_to_m(std::stod(b))});
  }
  return samples;
}

}  // namespace sheetgrasp
