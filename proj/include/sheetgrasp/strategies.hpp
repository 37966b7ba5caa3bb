#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheetgrasp/gripper.hpp"
#include "sheetgrasp/mechanics.hpp"
#include "sheetgrasp/scene.hpp"

namespace sheetgrasp {

// The four constraint-exploiting strategies, in their customary numbering.
enum class Strategy {
  top_grasp = 1,   // pinch-buckle the sheet against the tabletop
  top_scoop = 2,   // tilted scoop against the tabletop
  wall_grasp = 3,  // slide against a wall and grasp the bulge
  edge_grasp = 4,  // push past the table edge and grasp the overhang
};

const char* strategy_name(Strategy s);
std::string strategy_label(Strategy s);  // "Strategy 1" .. "Strategy 4"
std::optional<Strategy> strategy_from_name(const std::string& name);

inline constexpr double kDefaultNormalForce = 25.0;  // N, planner press force
inline constexpr double kScoopCapacityBonus = 1.3;   // scoop gain off the edge
inline constexpr double kMinBulgeHeight = 0.010;     // m, smallest graspable bulge
inline constexpr double kMinProtrusion = 0.015;      // m, smallest graspable overhang
inline constexpr double kApproachClearance = 0.10;   // m, approach/lift height

// Parameters of a grasp attempt.  Only the fields a strategy consumes are
// read; planners reject requests missing a required field.
struct GraspRequest {
  Strategy strategy = Strategy::top_grasp;
  std::optional<double> x;               // m, grasp distance from the sheet edge (1, 2)
  std::optional<double> tilt;            // rad, gripper inclination (2, 3)
  std::optional<double> distance;        // m, gripper-wall distance D (3)
  std::optional<double> wrinkle_length;  // m, sheet span L being compressed (3)
  std::optional<double> protrusion;      // m, overhang length past the edge (4)
  double normal_force = kDefaultNormalForce;  // N
};

enum class GraspRegion { edge, non_edge };

struct PositionClass {
  GraspRegion region;
  double length_factor;  // Euler length factor for the pinched span
};

// Position relative to the sheet edge: within the finger span (W0, W1] the
// pinch reaches the free edge (factor 0.7); beyond W1 both ends of the
// compressed span are held (factor 0.5).  x <= W0 cannot be pinched at all.
PositionClass classify_grasp_position(double x, const GripperModel& gripper);

enum class StageName { approach, contact, pressure, slide, lift };
enum class GripperCommand { open, close, natural, set_tilt };

const char* stage_name_str(StageName s);
const char* command_str(GripperCommand c);

// Stage order each strategy executes.
const std::vector<StageName>& expected_stage_sequence(Strategy s);

enum class ReasonCode {
  none,
  friction,                        // mu1 >= mu0, sheet slips under the finger
  buckling,                        // usable tangential band below critical load
  contact_width,                   // grasp position narrower than the scoop span
  tilt_limit,                      // commanded tilt beyond the reachable range
  collision_wall,                  // gripper would hit the wall (D <= W1*cos)
  collision_table,                 // vertical gripper hits the tabletop
  no_slack,                        // D >= L, nothing to compress
  bulge_too_small,                 // bulge below the graspable minimum
  bulge_out_of_reach,              // bulge apex outside the closing finger span
  protrusion_too_small,            // overhang below the graspable minimum
  deflection_exceeds_grasp_space,  // overhang droops past W1/2
  invalid_input,                   // rejected grid point recorded by sweeps
};

const char* reason_str(ReasonCode r);

struct PlanStage {
  StageName name;
  Pose2D pose;
  GripperCommand command;
};

struct GraspPlan {
  Strategy strategy = Strategy::top_grasp;
  bool feasible = false;
  ReasonCode reason = ReasonCode::none;
  std::string detail;
  std::map<std::string, double> margins;
  std::vector<PlanStage> stages;                // empty when infeasible
  std::optional<RigidTransform2D> transform;    // strategies 3-4: initial->objective
  GraspRequest request;                         // echo, consumed by simulation
};

struct MissingConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normal force the gripper exerts while sliding at inclination tilt.
// Piecewise linear through (5 deg, 1 N), (30 deg, 10 N), (60 deg, 60 N),
// falling linearly to 0 below 5 deg and extrapolated above 60 deg.
// Domain [0, pi/2].
double slide_normal_force(double tilt);

GraspPlan plan_top_grasp(const GraspRequest& req, const SheetInstance& sheet,
                         const GripperModel& gripper);
GraspPlan plan_top_scoop(const GraspRequest& req, const SheetInstance& sheet,
                         const GripperModel& gripper);
GraspPlan plan_wall_grasp(const GraspRequest& req, const SheetInstance& sheet,
                          const GripperModel& gripper, const Constraint& wall);
GraspPlan plan_edge_grasp(const GraspRequest& req, const SheetInstance& sheet,
                          const GripperModel& gripper, const Constraint& edge);

// Dispatch on req.strategy, resolving the needed constraint from the scene
// (MissingConstraintError when absent) and applying the table mu1 override.
GraspPlan plan(const GraspRequest& req, const Scene& scene, const GripperModel& gripper);

}  // namespace sheetgrasp
