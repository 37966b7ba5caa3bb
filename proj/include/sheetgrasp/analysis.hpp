#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sheetgrasp/strategies.hpp"

namespace sheetgrasp {

// One swept parameter.  Values are kept in the units the axis name states
// (file/CLI boundary units); conversion to SI happens per cell.
// Known axes: gsm, x_mm, theta_deg, distance_mm, wrinkle_mm, protrusion_mm,
// normal_force_N.
struct Axis {
  std::string name;
  std::vector<double> values;
};

struct MapCell {
  std::vector<double> coordinates;  // axis units, one per axis
  bool feasible = false;
  ReasonCode reason = ReasonCode::none;
  std::map<std::string, double> margins;
  std::optional<double> estimate;      // Monte-Carlo success, when sampled
  std::optional<bool> in_workspace;    // set by classify_workspace
};

// Dense feasibility grid, row-major with the last axis varying fastest.
struct FeasibilityMap {
  Strategy strategy = Strategy::top_grasp;
  std::vector<Axis> axes;
  std::vector<MapCell> cells;
  double threshold = 0.6;
  std::uint64_t seed = 0;
  int trials = 0;

  std::size_t cell_count() const;
  std::size_t index_of(const std::vector<std::size_t>& idx) const;
};

// Relative noise on friction and press force, absolute noise on commanded
// positions (x, D, protrusion).
struct PerturbationSpec {
  double rel_mu0 = 0.10;
  double rel_mu1 = 0.10;
  double rel_normal_force = 0.10;
  double abs_position = 0.003;  // m
};

struct SweepSpec {
  Strategy strategy = Strategy::top_grasp;
  std::vector<Axis> axes;
  GraspRequest base;      // non-swept fields
  int trials = 0;         // 0: deterministic verdicts only
  std::uint64_t seed = 0;
  double threshold = 0.6;
  PerturbationSpec perturbation;
};

// Evaluates the planner over the grid.  A grid point the planner rejects
// outright is recorded as infeasible(invalid_input); the sweep never aborts.
// Pure in (spec, scene, gripper): reruns are cell-for-cell identical.
FeasibilityMap sweep(const SweepSpec& spec, const Scene& scene, const GripperModel& gripper);

// Fraction of perturbed trials that plan feasibly.  Trial streams derive
// deterministically from (seed, cell_index, trial).
double monte_carlo_success(const GraspRequest& req, const Scene& scene,
                           const GripperModel& gripper, const PerturbationSpec& spec,
                           int trials, std::uint64_t seed, std::uint64_t cell_index = 0);

// Marks cells in-workspace: estimate >= threshold when sampled, otherwise
// the deterministic verdict.
void classify_workspace(FeasibilityMap& map);

enum class SurfaceQuality { any, good, best };
enum class PlacePoseControl { none, edge_ok, full };
enum class SizeClass { within_workspace, exceeds_workspace };

const char* surface_str(SurfaceQuality q);
const char* pose_control_str(PlacePoseControl p);
const char* size_class_str(SizeClass s);
std::optional<SurfaceQuality> surface_from_str(const std::string& s);
std::optional<PlacePoseControl> pose_control_from_str(const std::string& s);
std::optional<SizeClass> size_class_from_str(const std::string& s);

struct TaskRequirements {
  double gsm = 0.0;
  SurfaceQuality surface = SurfaceQuality::any;
  PlacePoseControl pose_control = PlacePoseControl::none;
  SizeClass size = SizeClass::within_workspace;
};

struct StrategyChoice {
  Strategy strategy;
  std::string rationale;
};

struct NoStrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Why the strategy cannot serve the requirements, or nullopt if it can.
// Capability table: strategies 1-2 top out at 230 g and allow any sheet
// size but give only edge-grasp place control and rough surface handling;
// 3 needs the sheet inside the workspace and reaches heavy grades with good
// surfaces; 4 is uncapped with the best surface quality and full control.
std::optional<std::string> strategy_rejection(Strategy s, const TaskRequirements& req);

// Surviving strategies ranked by preference 1 > 4 > 2 > 3.
// Throws NoStrategyError (listing every rejection) when none survive.
std::vector<StrategyChoice> select_strategy(const TaskRequirements& req);

}  // namespace sheetgrasp
