#include "sheetgrasp/strategies.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

namespace {
constexpr double kPi = std::numbers::pi;

double require(const std::optional<double>& field, const char* what) {
  if (!field) throw std::invalid_argument(std::string("plan: missing required field ") + what);
  return *field;
}

GraspPlan infeasible(GraspPlan plan, ReasonCode reason, std::string detail) {
  plan.feasible = false;
  plan.reason = reason;
  plan.detail = std::move(detail);
  plan.stages.clear();
  plan.transform.reset();
  return plan;
}

Pose2D at_height(const Eigen::Vector2d& p, double yaw, double z) {
  return {p.x(), p.y(), yaw, z};
}
}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::top_grasp: return "top_grasp";
    case Strategy::top_scoop: return "top_scoop";
    case Strategy::wall_grasp: return "wall_grasp";
    case Strategy::edge_grasp: return "edge_grasp";
  }
  return "?";
}

std::string strategy_label(Strategy s) {
  return "Strategy " + std::to_string(static_cast<int>(s));
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  for (Strategy s : {Strategy::top_grasp, Strategy::top_scoop, Strategy::wall_grasp,
                     Strategy::edge_grasp}) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

const char* stage_name_str(StageName s) {
  switch (s) {
    case StageName::approach: return "approach";
    case StageName::contact: return "contact";
    case StageName::pressure: return "pressure";
    case StageName::slide: return "slide";
    case StageName::lift: return "lift";
  }
  return "?";
}

const char* command_str(GripperCommand c) {
  switch (c) {
    case GripperCommand::open: return "open";
    case GripperCommand::close: return "close";
    case GripperCommand::natural: return "natural";
    case GripperCommand::set_tilt: return "set_tilt";
  }
  return "?";
}

const std::vector<StageName>& expected_stage_sequence(Strategy s) {
  static const std::vector<StageName> press = {StageName::approach, StageName::contact,
                                               StageName::pressure, StageName::lift};
  static const std::vector<StageName> slide = {StageName::approach, StageName::contact,
                                               StageName::slide, StageName::lift};
  return (s == Strategy::wall_grasp || s == Strategy::edge_grasp) ? slide : press;
}

const char* reason_str(ReasonCode r) {
  switch (r) {
    case ReasonCode::none: return "";
    case ReasonCode::friction: return "friction";
    case ReasonCode::buckling: return "buckling";
    case ReasonCode::contact_width: return "contact_width";
    case ReasonCode::tilt_limit: return "tilt_limit";
    case ReasonCode::collision_wall: return "collision_wall";
    case ReasonCode::collision_table: return "collision_table";
    case ReasonCode::no_slack: return "no_slack";
    case ReasonCode::bulge_too_small: return "bulge_too_small";
    case ReasonCode::bulge_out_of_reach: return "bulge_out_of_reach";
    case ReasonCode::protrusion_too_small: return "protrusion_too_small";
    case ReasonCode::deflection_exceeds_grasp_space: return "deflection_exceeds_grasp_space";
    case ReasonCode::invalid_input: return "invalid_input";
  }
  return "?";
}

PositionClass classify_grasp_position(double x, const GripperModel& gripper) {
  gripper.validate();
  if (!(x > gripper.W0)) {
    throw std::invalid_argument("classify_grasp_position: x <= W0, position cannot be pinched");
  }
  if (x <= gripper.W1) return {GraspRegion::edge, kLengthFactorEdge};
  return {GraspRegion::non_edge, kLengthFactorNonEdge};
}

double slide_normal_force(double tilt) {
  const double deg = rad_to_deg(tilt);
  if (deg < 0.0 || deg > 90.0 + 1e-9) {
    throw std::domain_error("slide_normal_force: tilt outside [0, 90] deg");
  }
  struct Knot { double deg, N; };
  static constexpr Knot knots[] = {{0.0, 0.0}, {5.0, 1.0}, {30.0, 10.0}, {60.0, 60.0}};
  if (deg >= 60.0) {
    const double slope = (60.0 - 10.0) / (60.0 - 30.0);
    return 60.0 + slope * (deg - 60.0);
  }
  for (int i = 1; i < 4; ++i) {
    if (deg <= knots[i].deg) {
      const auto& a = knots[i - 1];
      const auto& b = knots[i];
      return a.N + (b.N - a.N) * (deg - a.deg) / (b.deg - a.deg);
    }
  }
  return 60.0;  // unreachable
}

GraspPlan plan_top_grasp(const GraspRequest& req, const SheetInstance& sheet,
                         const GripperModel& gripper) {
  GraspPlan plan;
  plan.strategy = Strategy::top_grasp;
  plan.request = req;

  const double x = require(req.x, "x");
  if (req.normal_force < 0.0) throw std::invalid_argument("plan: negative normal force");
  if (x > sheet.length) throw std::invalid_argument("plan: grasp position beyond the sheet");

  const Material& mat = sheet.material;
  const PositionClass pc = classify_grasp_position(x, gripper);
  const double span = pc.region == GraspRegion::edge ? x : gripper.W1;

  plan.margins["friction_gap"] = mat.mu0 - mat.mu1;
  if (!friction_condition(mat)) {
    return infeasible(std::move(plan), ReasonCode::friction,
                      "sheet-support friction exceeds finger-sheet friction");
  }

  const StiffnessProfile prof = derive_stiffness(mat);
  const BucklingContext ctx(span, pc.length_factor, prof.EI);
  const auto [ok, margin] = buckling_feasible(req.normal_force, mat, ctx);
  plan.margins["buckling_margin_N"] = margin;
  if (!ok) {
    return infeasible(std::move(plan), ReasonCode::buckling,
                      "usable tangential band below the critical load");
  }

  const Eigen::Vector2d axis = Eigen::Rotation2Dd(sheet.pose.yaw) * Eigen::Vector2d::UnitX();
  const Eigen::Vector2d point = sheet.pose.position() + (sheet.length / 2.0 - x) * axis;
  const double yaw = sheet.pose.yaw;
  plan.feasible = true;
  plan.stages = {
      {StageName::approach, at_height(point, yaw, kApproachClearance), GripperCommand::open},
      {StageName::contact, at_height(point, yaw, 0.0), GripperCommand::open},
      {StageName::pressure, at_height(point, yaw, 0.0), GripperCommand::close},
      {StageName::lift, at_height(point, yaw, kApproachClearance), GripperCommand::close},
  };
  return plan;
}

GraspPlan plan_top_scoop(const GraspRequest& req, const SheetInstance& sheet,
                         const GripperModel& gripper) {
  GraspPlan plan;
  plan.strategy = Strategy::top_scoop;
  plan.request = req;

  const double x = require(req.x, "x");
  const double tilt = require(req.tilt, "tilt");
  if (tilt < 0.0) throw std::domain_error("plan: negative scoop tilt");
  if (x > sheet.length) throw std::invalid_argument("plan: grasp position beyond the sheet");

  const Material& mat = sheet.material;
  const PositionClass pc = classify_grasp_position(x, gripper);
  const double span = pc.region == GraspRegion::edge ? x : gripper.W1;

  plan.margins["friction_gap"] = mat.mu0 - mat.mu1;
  if (!friction_condition(mat)) {
    return infeasible(std::move(plan), ReasonCode::friction,
                      "sheet-support friction exceeds finger-sheet friction");
  }

  // Both the geometric scoop limit and the actuation range cap the tilt.
  const double tilt_cap = std::min(theta_max(gripper, gripper.Hmax), gripper.tilt_max);
  plan.margins["tilt_margin_rad"] = tilt_cap - tilt;
  if (tilt > tilt_cap) {
    return infeasible(std::move(plan), ReasonCode::tilt_limit,
                      "commanded tilt beyond the scoop limit");
  }

  // Contact width of the deformed fingers projected on the table.
  const double contact_width = w_min(gripper, gripper.Hmax) * std::cos(tilt);
  plan.margins["contact_width_margin_m"] = x - contact_width;
  if (x < contact_width) {
    return infeasible(std::move(plan), ReasonCode::contact_width,
                      "grasp position narrower than the scoop contact width");
  }

  // The scooping motion gains leverage away from the edge.
  const double bonus = pc.region == GraspRegion::non_edge ? kScoopCapacityBonus : 1.0;
  const StiffnessProfile prof = derive_stiffness(mat);
  const BucklingContext ctx(span, pc.length_factor, prof.EI);
  const auto [ok, margin] = buckling_feasible(req.normal_force * bonus, mat, ctx);
  plan.margins["buckling_margin_N"] = margin;
  if (!ok) {
    return infeasible(std::move(plan), ReasonCode::buckling,
                      "usable tangential band below the critical load");
  }

  const Eigen::Vector2d axis = Eigen::Rotation2Dd(sheet.pose.yaw) * Eigen::Vector2d::UnitX();
  const Eigen::Vector2d point = sheet.pose.position() + (sheet.length / 2.0 - x) * axis;
  const double yaw = sheet.pose.yaw;
  plan.feasible = true;
  plan.stages = {
      {StageName::approach, at_height(point, yaw, kApproachClearance), GripperCommand::set_tilt},
      {StageName::contact, at_height(point, yaw, 0.0), GripperCommand::open},
      {StageName::pressure, at_height(point, yaw, 0.0), GripperCommand::close},
      {StageName::lift, at_height(point, yaw, kApproachClearance), GripperCommand::close},
  };
  return plan;
}

GraspPlan plan_wall_grasp(const GraspRequest& req, const SheetInstance& sheet,
                          const GripperModel& gripper, const Constraint& wall) {
  GraspPlan plan;
  plan.strategy = Strategy::wall_grasp;
  plan.request = req;

  if (wall.kind != ConstraintKind::wall) throw std::invalid_argument("plan: constraint is not a wall");
  wall.validate();
  gripper.validate();

  const double tilt = require(req.tilt, "tilt");
  const double D = require(req.distance, "distance");
  const double L = req.wrinkle_length.value_or(sheet.length / 2.0);
  if (!plan.request.wrinkle_length) plan.request.wrinkle_length = L;
  if (tilt < 0.0 || tilt > kPi / 2.0 + 1e-9) throw std::domain_error("plan: tilt outside [0, 90] deg");
  if (D < 0.0) throw std::invalid_argument("plan: negative wall distance");
  if (!(L > 0.0) || L > sheet.length) throw std::invalid_argument("plan: wrinkle span outside the sheet");

  const Material& mat = sheet.material;
  plan.margins["friction_gap"] = mat.mu0 - mat.mu1;
  if (!friction_condition(mat)) {
    return infeasible(std::move(plan), ReasonCode::friction,
                      "sheet-support friction exceeds finger-sheet friction");
  }

  // A vertical gripper presses its own body into the tabletop; no distance
  // makes that grasp work.
  if (tilt >= kPi / 2.0 * (1.0 - 1e-9)) {
    return infeasible(std::move(plan), ReasonCode::collision_table,
                      "vertical gripper collides with the tabletop");
  }

  const double d_min = gripper.W1 * std::cos(tilt);
  plan.margins["collision_clearance_m"] = D - d_min;
  if (D <= d_min) {
    return infeasible(std::move(plan), ReasonCode::collision_wall,
                      "gripper body would reach the wall before the fingers");
  }
  if (D >= L) {
    return infeasible(std::move(plan), ReasonCode::no_slack,
                      "no slack to compress: D >= L");
  }

  // Inextensible two-segment fold of the compressed span.
  const double bulge = 0.5 * std::sqrt(L * L - D * D);
  plan.margins["bulge_height_m"] = bulge;
  if (bulge < kMinBulgeHeight) {
    return infeasible(std::move(plan), ReasonCode::bulge_too_small,
                      "bulge below the graspable minimum");
  }

  // The fold apex sits midway between the pressing finger and the wall; the
  // closing finger rows span W1*cos(tilt) on the table, so the apex is
  // captured only while D/2 stays inside that span.
  plan.margins["grasp_space_clearance_m"] = d_min - D / 2.0;
  if (D / 2.0 >= d_min) {
    return infeasible(std::move(plan), ReasonCode::bulge_out_of_reach,
                      "bulge apex beyond the closing finger span");
  }

  const double N = slide_normal_force(tilt);
  const StiffnessProfile prof = derive_stiffness(mat);
  const BucklingContext ctx = BucklingContext::edge(L, prof.EI);
  const auto [ok, margin] = buckling_feasible(N, mat, ctx);
  plan.margins["buckling_margin_N"] = margin;
  if (!ok) {
    return infeasible(std::move(plan), ReasonCode::buckling,
                      "slide normal force cannot sustain the wrinkle");
  }

  // Contact point at arc distance L behind the leading edge, slide toward
  // the wall until the fingers stand D from it.
  const Eigen::Vector2d u = wall.normal_toward(sheet.pose.position());  // wall -> sheet
  const Eigen::Vector2d leading = sheet.edge_midpoint_toward(-u);
  const Eigen::Vector2d contact = leading + L * u;
  const double yaw = std::atan2(-u.y(), -u.x());
  const Eigen::Vector2d objective = wall.project_to_line(contact) + D * u;

  const Pose2D p_initial = at_height(contact, yaw, 0.0);
  const Pose2D p_objective = at_height(objective, yaw, 0.0);
  plan.transform = transform_between(p_initial, p_objective);
  plan.feasible = true;
  plan.stages = {
      {StageName::approach, at_height(contact, yaw, kApproachClearance), GripperCommand::open},
      {StageName::contact, p_initial, GripperCommand::open},
      {StageName::slide, p_objective, GripperCommand::open},
      {StageName::lift, at_height(objective, yaw, kApproachClearance), GripperCommand::close},
  };
  return plan;
}

GraspPlan plan_edge_grasp(const GraspRequest& req, const SheetInstance& sheet,
                          const GripperModel& gripper, const Constraint& edge) {
  GraspPlan plan;
  plan.strategy = Strategy::edge_grasp;
  plan.request = req;

  if (edge.kind != ConstraintKind::table_edge) {
    throw std::invalid_argument("plan: constraint is not a table edge");
  }
  edge.validate();
  gripper.validate();

  const double Lp = require(req.protrusion, "protrusion");
  if (Lp < 0.0) throw std::invalid_argument("plan: negative protrusion");
  if (Lp >= sheet.length) throw std::invalid_argument("plan: protrusion exceeds the sheet");

  const Material& mat = sheet.material;
  plan.margins["friction_gap"] = mat.mu0 - mat.mu1;
  if (!friction_condition(mat)) {
    return infeasible(std::move(plan), ReasonCode::friction,
                      "sheet-support friction exceeds finger-sheet friction");
  }

  plan.margins["protrusion_margin_m"] = Lp - kMinProtrusion;
  if (Lp < kMinProtrusion) {
    return infeasible(std::move(plan), ReasonCode::protrusion_too_small,
                      "overhang below the graspable minimum");
  }

  const StiffnessProfile prof = derive_stiffness(mat);
  const double droop = cantilever_deflection(Lp, prof);
  plan.margins["deflection_clearance_m"] = gripper.W1 / 2.0 - droop;
  if (droop >= gripper.W1 / 2.0) {
    return infeasible(std::move(plan), ReasonCode::deflection_exceeds_grasp_space,
                      "overhang droops past the finger half-opening");
  }

  const Eigen::Vector2d u = edge.normal_toward(sheet.pose.position());  // edge -> sheet
  const Eigen::Vector2d center = sheet.pose.position();
  const Eigen::Vector2d leading = sheet.edge_midpoint_toward(-u);
  const double gap = edge.distance_to_line(leading);
  const double push = gap + Lp;
  const double yaw = std::atan2(-u.y(), -u.x());

  const Pose2D p_initial = at_height(center, yaw, 0.0);
  const Pose2D p_objective = at_height(center - push * u, yaw, 0.0);
  const Eigen::Vector2d overhang_mid = edge.project_to_line(center) - (Lp / 2.0) * u;

  plan.transform = transform_between(p_initial, p_objective);
  plan.feasible = true;
  plan.stages = {
      {StageName::approach, at_height(center, yaw, kApproachClearance), GripperCommand::natural},
      {StageName::contact, p_initial, GripperCommand::natural},
      {StageName::slide, p_objective, GripperCommand::natural},
      // Regrasp the overhang with the tool center point on the tabletop plane.
      {StageName::lift, at_height(overhang_mid, yaw, 0.0), GripperCommand::close},
  };
  return plan;
}

GraspPlan plan(const GraspRequest& req, const Scene& scene, const GripperModel& gripper) {
  SheetInstance sheet = scene.sheet;
  sheet.material = scene.effective_material();
  switch (req.strategy) {
    case Strategy::top_grasp:
      return plan_top_grasp(req, sheet, gripper);
    case Strategy::top_scoop:
      return plan_top_scoop(req, sheet, gripper);
    case Strategy::wall_grasp: {
      const Constraint* wall = scene.find(ConstraintKind::wall);
      if (!wall) throw MissingConstraintError("plan: scene has no wall constraint");
      return plan_wall_grasp(req, sheet, gripper, *wall);
    }
    case Strategy::edge_grasp: {
      const Constraint* edge = scene.find(ConstraintKind::table_edge);
      if (!edge) throw MissingConstraintError("plan: scene has no table-edge constraint");
      return plan_edge_grasp(req, sheet, gripper, *edge);
    }
  }
  throw std::invalid_argument("plan: unknown strategy");
}

}  // namespace sheetgrasp
