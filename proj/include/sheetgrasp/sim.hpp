#pragma once

#include <cstdint>
#include <vector>

#include "sheetgrasp/gripper.hpp"
#include "sheetgrasp/material.hpp"
#include "sheetgrasp/strategies.hpp"

namespace sheetgrasp {

// Which force series to synthesize: the whole gripper or a single finger
// row.  The distinction matters for the scoop, whose leading (left) row
// keeps dragging the sheet in the same direction through lift while the
// trailing (right) row reverses like a plain press.
enum class TraceSide { gripper, left_finger, right_finger };

struct TraceSample {
  double t = 0.0;        // s
  StageName stage = StageName::approach;
  double F_Z = 0.0;      // N, wrist normal
  double F_Y = 0.0;      // N, wrist tangential
  double F_N_f = 0.0;    // N, finger-frame normal
  double F_tau_f = 0.0;  // N, finger-frame tangential
};

struct ForceTrace {
  Strategy strategy = Strategy::top_grasp;
  double tilt = 0.0;  // rad, inclination used for the finger-frame map
  std::vector<TraceSample> samples;
};

struct SimConfig {
  double stage_duration = 1.0;   // s
  int sample_rate = 100;         // Hz
  double contact_preload = 2.0;  // N, touch force at the end of contact
  double overshoot = 1.1;        // lift-stage tangential peak factor
  double decay_tau = 0.2;        // s, exponential release constant
  double slide_band = 0.2;       // relative fluctuation while sliding past the edge
};

// Synthesizes the wrist force trace the plan's stage machine would produce.
// Deterministic in (plan, material, seed); refuses infeasible plans.
ForceTrace execute(const GraspPlan& plan, const Material& material,
                   const GripperModel& gripper, std::uint64_t seed = 0,
                   TraceSide side = TraceSide::gripper, const SimConfig& config = {});

}  // namespace sheetgrasp
