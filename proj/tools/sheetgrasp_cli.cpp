#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sheetgrasp/analysis.hpp"
#include "sheetgrasp/io.hpp"
#include "sheetgrasp/sim.hpp"
#include "sheetgrasp/units.hpp"

namespace {

using namespace sheetgrasp;

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 1;

struct CommonArgs {
  std::string scene_path;
  std::string materials_path;
  std::string gripper_path;
  std::string strategy_name;
  std::optional<double> x_mm, tilt_deg, distance_mm, wrinkle_mm, protrusion_mm;
  double normal_force = kDefaultNormalForce;
};

void add_planning_options(CLI::App* cmd, CommonArgs& args, bool need_strategy = true) {
  if (need_strategy) {
    cmd->add_option("--strategy", args.strategy_name,
                    "top_grasp | top_scoop | wall_grasp | edge_grasp")
        ->required();
  }
  cmd->add_option("--scene", args.scene_path, "scene JSON file")->required();
  cmd->add_option("--materials", args.materials_path,
                  "material library JSON (default: built-in grades)");
  cmd->add_option("--gripper", args.gripper_path, "gripper profile JSON (default: built-in)");
  cmd->add_option("--x-mm", args.x_mm, "grasp distance from the sheet edge");
  cmd->add_option("--tilt-deg", args.tilt_deg, "gripper inclination");
  cmd->add_option("--distance-mm", args.distance_mm, "gripper-wall distance D");
  cmd->add_option("--wrinkle-mm", args.wrinkle_mm,
                  "compressed sheet span L (default: half the sheet length)");
  cmd->add_option("--protrusion-mm", args.protrusion_mm, "overhang length past the edge");
  cmd->add_option("--normal-force", args.normal_force, "planner press force, N")
      ->capture_default_str();
}

Strategy parse_strategy(const std::string& name) {
  const auto s = strategy_from_name(name);
  if (!s) throw std::invalid_argument("unknown strategy: " + name);
  return *s;
}

MaterialLibrary resolve_library(const CommonArgs& args) {
  return args.materials_path.empty() ? default_material_library()
                                     : load_material_library_file(args.materials_path);
}

GripperModel resolve_gripper(const CommonArgs& args) {
  return args.gripper_path.empty() ? default_gripper() : load_gripper_file(args.gripper_path);
}

GraspRequest build_request(const CommonArgs& args) {
  GraspRequest req;
  req.strategy = parse_strategy(args.strategy_name);
  if (args.x_mm) req.x = mm_to_m(*args.x_mm);
  if (args.tilt_deg) req.tilt = deg_to_rad(*args.tilt_deg);
  if (args.distance_mm) req.distance = mm_to_m(*args.distance_mm);
  if (args.wrinkle_mm) req.wrinkle_length = mm_to_m(*args.wrinkle_mm);
  if (args.protrusion_mm) req.protrusion = mm_to_m(*args.protrusion_mm);
  req.normal_force = args.normal_force;
  return req;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write file: " + out_path);
    f << text;
  }
  std::cout << text;
}

// axis spec: name=v1,v2,v3 or name=start:stop:step (inclusive)
Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("axis must look like name=v1,v2 or name=start:stop:step: " + spec);
  }
  Axis axis;
  axis.name = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  if (rest.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(rest.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || !(step > 0)) {
      throw std::invalid_argument("bad axis range: " + spec);
    }
    for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(step)); v += step) {
      axis.values.push_back(v);
    }
  } else {
    std::istringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) axis.values.push_back(std::stod(tok));
    }
  }
  if (axis.values.empty()) throw std::invalid_argument("axis has no values: " + spec);
  return axis;
}

int run_plan(const CommonArgs& args, const std::string& out_path) {
  const MaterialLibrary lib = resolve_library(args);
  const Scene scene = load_scene_file(args.scene_path, lib);
  const GripperModel gripper = resolve_gripper(args);
  const GraspPlan result = plan(build_request(args), scene, gripper);
  emit(plan_to_json(result), out_path);
  return result.feasible ? kExitFeasible : kExitInfeasible;
}

int run_scoop_geometry(const std::string& gripper_path, std::optional<double> travel_mm,
                       std::optional<double> tilt_deg, const std::string& out_path) {
  CommonArgs args;
  args.gripper_path = gripper_path;
  const GripperModel g = resolve_gripper(args);
  const double H = travel_mm ? mm_to_m(*travel_mm) : g.Hmax;
  const double cap = std::min(theta_max(g, g.Hmax), g.tilt_max);
  const double tilt = tilt_deg ? deg_to_rad(*tilt_deg) : cap;
  const auto tidy = [](double v) { return std::round(v * 1e12) / 1e12; };

  nlohmann::ordered_json j;
  j["gripper"] = g.name;
  j["travel_mm"] = tidy(m_to_mm(H));
  j["theta_max_deg"] = tidy(rad_to_deg(theta_max(g, H)));
  j["w_min_mm"] = tidy(m_to_mm(w_min(g, H)));
  j["tilt_cap_deg"] = tidy(rad_to_deg(cap));
  j["tilt_deg"] = tidy(rad_to_deg(tilt));
  j["contact_width_mm"] = tidy(m_to_mm(w_min(g, g.Hmax) * std::cos(tilt)));
  j["grasp_space_height_mm"] = tidy(m_to_mm(grasp_space_height(g, tilt)));
  emit(j, out_path);
  return kExitFeasible;
}

int run_sweep(const CommonArgs& args, const std::vector<std::string>& axis_specs,
              int trials, std::uint64_t seed, double threshold,
              const std::string& out_csv, const std::string& out_meta) {
  const MaterialLibrary lib = resolve_library(args);
  const Scene scene = load_scene_file(args.scene_path, lib);
  const GripperModel gripper = resolve_gripper(args);

  SweepSpec spec;
  spec.strategy = parse_strategy(args.strategy_name);
  spec.base = build_request(args);
  spec.trials = trials;
  spec.seed = seed;
  spec.threshold = threshold;
  for (const auto& s : axis_specs) spec.axes.push_back(parse_axis(s));

  const FeasibilityMap map = sweep(spec, scene, gripper);
  if (out_csv.empty()) {
    write_map_csv(map, std::cout);
  } else {
    write_map_csv_file(map, out_csv);
  }
  if (!out_meta.empty()) {
    std::ofstream f(out_meta, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write file: " + out_meta);
    f << map_meta_json(map).dump(2) << "\n";
  }
  return kExitFeasible;
}

int run_select(double gsm, const std::string& surface, const std::string& pose,
               const std::string& size, const std::string& out_path) {
  TaskRequirements req;
  req.gsm = gsm;
  const auto q = surface_from_str(surface);
  const auto p = pose_control_from_str(pose);
  const auto s = size_class_from_str(size);
  if (!q) throw std::invalid_argument("surface must be any|good|best");
  if (!p) throw std::invalid_argument("pose-control must be none|edge_ok|full");
  if (!s) throw std::invalid_argument("size must be within_workspace|exceeds_workspace");
  req.surface = *q;
  req.pose_control = *p;
  req.size = *s;

  const auto ranked = select_strategy(req);
  nlohmann::ordered_json j;
  j["requirements"] = {{"gsm", req.gsm},
                       {"surface", surface_str(req.surface)},
                       {"pose_control", pose_control_str(req.pose_control)},
                       {"size", size_class_str(req.size)}};
  j["ranked"] = nlohmann::ordered_json::array();
  for (const auto& c : ranked) {
    j["ranked"].push_back({{"strategy", strategy_name(c.strategy)},
                           {"label", strategy_label(c.strategy)},
                           {"rationale", c.rationale}});
  }
  emit(j, out_path);
  return kExitFeasible;
}

int run_calibrate(const std::string& samples_path, std::optional<double> lambda_opt,
                  std::optional<double> gsm, double width_mm, const std::string& out_path) {
  const auto samples = load_deflection_samples_csv(samples_path);
  double lambda = 0.0;
  if (lambda_opt) {
    lambda = *lambda_opt;
  } else if (gsm) {
    lambda = (*gsm / 1000.0) * mm_to_m(width_mm);
  } else {
    throw std::invalid_argument("calibrate needs --lambda or --gsm");
  }
  const double EI = calibrate_EI(samples, lambda);

  double ss = 0.0;
  for (const auto& s : samples) {
    const double pred = cantilever_deflection(s.length, {EI, lambda});
    const double rel = (pred - s.deflection) / s.deflection;
    ss += rel * rel;
  }
  nlohmann::ordered_json j;
  j["EI"] = EI;
  j["lambda"] = lambda;
  j["samples"] = samples.size();
  j["rms_rel_residual"] = std::sqrt(ss / static_cast<double>(samples.size()));
  emit(j, out_path);
  return kExitFeasible;
}

int run_simulate(const CommonArgs& args, std::uint64_t seed, const std::string& side_name,
                 const std::string& out_csv) {
  const MaterialLibrary lib = resolve_library(args);
  const Scene scene = load_scene_file(args.scene_path, lib);
  const GripperModel gripper = resolve_gripper(args);
  const GraspPlan result = plan(build_request(args), scene, gripper);
  if (!result.feasible) {
    emit(plan_to_json(result), "");
    return kExitInfeasible;
  }

  TraceSide side = TraceSide::gripper;
  if (side_name == "left_finger") side = TraceSide::left_finger;
  else if (side_name == "right_finger") side = TraceSide::right_finger;
  else if (side_name != "gripper") throw std::invalid_argument("side must be gripper|left_finger|right_finger");

  const ForceTrace trace = execute(result, scene.effective_material(), gripper, seed, side);
  if (out_csv.empty()) {
    write_trace_csv(trace, std::cout);
  } else {
    write_trace_csv_file(trace, out_csv);
  }
  return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planner and desk-scale simulator for grasping thin flexible sheets "
               "with a two-row soft gripper using tabletop, wall and table-edge "
               "constraints"};
  app.require_subcommand(1);

  CommonArgs plan_args;
  std::string plan_out;
  auto* cmd_plan = app.add_subcommand("plan", "plan one grasp and print the plan JSON");
  add_planning_options(cmd_plan, plan_args);
  cmd_plan->add_option("--out", plan_out, "also write the plan JSON here");

  std::string sg_gripper, sg_out;
  std::optional<double> sg_travel_mm, sg_tilt_deg;
  auto* cmd_geom = app.add_subcommand("scoop-geometry",
                                      "tilt limit, minimum span and grasp space of the scoop");
  cmd_geom->add_option("--gripper", sg_gripper, "gripper profile JSON (default: built-in)");
  cmd_geom->add_option("--travel-mm", sg_travel_mm, "fingertip travel H (default: Hmax)");
  cmd_geom->add_option("--tilt-deg", sg_tilt_deg, "inclination to evaluate (default: tilt cap)");
  cmd_geom->add_option("--out", sg_out, "also write the JSON here");

  CommonArgs sweep_args;
  std::vector<std::string> axis_specs;
  int trials = 0;
  std::uint64_t seed = 0;
  double threshold = 0.6;
  std::string sweep_csv, sweep_meta;
  auto* cmd_sweep = app.add_subcommand("sweep", "evaluate the planner over a parameter grid");
  add_planning_options(cmd_sweep, sweep_args);
  cmd_sweep->add_option("--axis", axis_specs,
                        "swept axis, name=v1,v2 or name=start:stop:step; axes: gsm, x_mm, "
                        "theta_deg, distance_mm, wrinkle_mm, protrusion_mm, normal_force_N")
      ->required();
  cmd_sweep->add_option("--trials", trials, "Monte-Carlo trials per cell (0: deterministic)")
      ->capture_default_str();
  cmd_sweep->add_option("--seed", seed, "random seed")->capture_default_str();
  cmd_sweep->add_option("--threshold", threshold, "in-workspace success threshold")
      ->capture_default_str();
  cmd_sweep->add_option("--out-csv", sweep_csv, "write the map CSV here (default: stdout)");
  cmd_sweep->add_option("--out-meta", sweep_meta, "write the JSON sidecar here");

  double sel_gsm = 0.0;
  std::string sel_surface = "any", sel_pose = "none", sel_size = "within_workspace", sel_out;
  auto* cmd_select = app.add_subcommand("select", "rank strategies for task requirements");
  cmd_select->add_option("--gsm", sel_gsm, "sheet grammage, g/m^2")->required();
  cmd_select->add_option("--surface", sel_surface, "any|good|best")->capture_default_str();
  cmd_select->add_option("--pose-control", sel_pose, "none|edge_ok|full")->capture_default_str();
  cmd_select->add_option("--size", sel_size, "within_workspace|exceeds_workspace")
      ->capture_default_str();
  cmd_select->add_option("--out", sel_out, "also write the JSON here");

  std::string cal_samples, cal_out;
  std::optional<double> cal_lambda, cal_gsm;
  double cal_width_mm = 105.0;
  auto* cmd_cal = app.add_subcommand("calibrate", "fit EI from cantilever deflection samples");
  cmd_cal->add_option("--samples", cal_samples, "CSV with header length_mm,deflection_mm")
      ->required();
  cmd_cal->add_option("--lambda", cal_lambda, "mass per unit length, kg/m");
  cmd_cal->add_option("--gsm", cal_gsm, "grammage, used with --width-mm to derive lambda");
  cmd_cal->add_option("--width-mm", cal_width_mm, "strip width")->capture_default_str();
  cmd_cal->add_option("--out", cal_out, "also write the JSON here");

  CommonArgs sim_args;
  std::uint64_t sim_seed = 0;
  std::string sim_side = "gripper", sim_csv;
  auto* cmd_sim = app.add_subcommand("simulate", "synthesize the force trace of a feasible plan");
  add_planning_options(cmd_sim, sim_args);
  cmd_sim->add_option("--seed", sim_seed, "random seed")->capture_default_str();
  cmd_sim->add_option("--side", sim_side, "gripper|left_finger|right_finger")
      ->capture_default_str();
  cmd_sim->add_option("--out-csv", sim_csv, "write the trace CSV here (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(cmd_plan)) return run_plan(plan_args, plan_out);
    if (app.got_subcommand(cmd_geom)) {
      return run_scoop_geometry(sg_gripper, sg_travel_mm, sg_tilt_deg, sg_out);
    }
    if (app.got_subcommand(cmd_sweep)) {
      return run_sweep(sweep_args, axis_specs, trials, seed, threshold, sweep_csv, sweep_meta);
    }
    if (app.got_subcommand(cmd_select)) {
      return run_select(sel_gsm, sel_surface, sel_pose, sel_size, sel_out);
    }
    if (app.got_subcommand(cmd_cal)) {
      return run_calibrate(cal_samples, cal_lambda, cal_gsm, cal_width_mm, cal_out);
    }
    if (app.got_subcommand(cmd_sim)) return run_simulate(sim_args, sim_seed, sim_side, sim_csv);
  } catch (const NoStrategyError& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
