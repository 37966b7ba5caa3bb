#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheetgrasp/analysis.hpp"
#include "sheetgrasp/scene.hpp"
#include "sheetgrasp/sim.hpp"

namespace sheetgrasp {

// Deterministic number formatting shared by every CSV/JSON writer, so that
// identical inputs always serialize to identical bytes.
std::string format_double(double v);

// ---- material library ----------------------------------------------------

// Record schema (SI units): {name, gsm, thickness?, youngs_modulus?,
// volumetric_density?, mu0, mu1, width?, unvalidated?}.  Missing optional
// fields fall back to the module defaults / gsm-derived thickness.
Material material_from_json(const nlohmann::json& j);
nlohmann::ordered_json material_to_json(const Material& m);

struct MaterialLibrary {
  std::vector<Material> materials;

  const Material& find(const std::string& name) const;  // throws invalid_argument
  bool contains(const std::string& name) const;
};

// The paper grades the toolkit ships with (copy 17/35, printing 60-120,
// cardboard 150-250) plus two unvalidated cloth-like presets.
MaterialLibrary default_material_library();

MaterialLibrary load_material_library(const nlohmann::json& j);
MaterialLibrary load_material_library_file(const std::string& path);
nlohmann::ordered_json material_library_to_json(const MaterialLibrary& lib);

// ---- gripper profile -----------------------------------------------------

// {name, W0_mm, W1_mm, Lf_mm, Hmax_mm, tilt_max_deg}
GripperModel gripper_from_json(const nlohmann::json& j);
GripperModel load_gripper_file(const std::string& path);
nlohmann::ordered_json gripper_to_json(const GripperModel& g);

// ---- scene ---------------------------------------------------------------

// {paper: {material_name, length_mm, width_mm, corners_mm | pose},
//  constraints: [{kind, segment_mm, height_mm?}], table: {mu1?}}
Scene scene_from_json(const nlohmann::json& j, const MaterialLibrary& lib);
Scene load_scene_file(const std::string& path, const MaterialLibrary& lib);
nlohmann::ordered_json scene_to_json(const Scene& scene);

// ---- plan ----------------------------------------------------------------

// {strategy, verdict, reason?, margins, stages: [{name, pose_mm_deg,
//  command}], transform?}; millimeters/degrees throughout.
nlohmann::ordered_json plan_to_json(const GraspPlan& plan);

// ---- feasibility map -----------------------------------------------------

// Fixed column order: axes, feasible, reason, the canonical margin list,
// estimate, in_workspace.
const std::vector<std::string>& map_margin_columns();
void write_map_csv(const FeasibilityMap& map, std::ostream& out);
void write_map_csv_file(const FeasibilityMap& map, const std::string& path);
nlohmann::ordered_json map_meta_json(const FeasibilityMap& map);

// ---- force trace ---------------------------------------------------------

// Columns: time, stage, F_Z, F_Y, F_N_f, F_tau_f.
void write_trace_csv(const ForceTrace& trace, std::ostream& out);
void write_trace_csv_file(const ForceTrace& trace, const std::string& path);

// ---- calibration samples -------------------------------------------------

// CSV with header length_mm,deflection_mm.
std::vector<DeflectionSample> load_deflection_samples_csv(const std::string& path);

}  // namespace sheetgrasp
