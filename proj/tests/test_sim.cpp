#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sheetgrasp/mechanics.hpp"
#include "sheetgrasp/sim.hpp"
#include "sheetgrasp/units.hpp"
#include "helpers.hpp"

using namespace sheetgrasp;
using sheetgrasp::testing::example_scene;
using sheetgrasp::testing::request;

namespace {
const GripperModel kGripper = default_gripper();

GraspPlan feasible_plan(Strategy s, double gsm = 80.0) {
  Scene scene = example_scene(gsm);
  GraspRequest req = request(s);
  switch (s) {
    case Strategy::top_grasp:
      req.x = 0.090;
      break;
    case Strategy::top_scoop:
      req.x = 0.090;
      req.tilt = deg_to_rad(5.0);
      break;
    case Strategy::wall_grasp:
      req.tilt = deg_to_rad(60.0);
      req.distance = 0.050;
      break;
    case Strategy::edge_grasp:
      req.protrusion = 0.060;
      break;
  }
  GraspPlan p = plan(req, scene, kGripper);
  REQUIRE(p.feasible);
  return p;
}

double stage_start(const GraspPlan& plan, StageName s) {
  const auto& seq = expected_stage_sequence(plan.strategy);
  const auto it = std::find(seq.begin(), seq.end(), s);
  return static_cast<double>(it - seq.begin());
}
}  // namespace

TEST_CASE("trace structure: one second per stage at 100 Hz") {
  const GraspPlan p = feasible_plan(Strategy::top_grasp);
  const ForceTrace trace = execute(p, example_scene().effective_material(), kGripper);

  REQUIRE(trace.samples.size() == 400);
  CHECK(trace.samples.front().t == doctest::Approx(0.01));
  CHECK(trace.samples.back().t == doctest::Approx(4.0));
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    CHECK(trace.samples[i].t > trace.samples[i - 1].t);
  }

  // Stage order follows the plan.
  const auto& seq = expected_stage_sequence(p.strategy);
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    CHECK(trace.samples[i].stage == seq[i / 100]);
  }

  // Approach is force-free; contact ends at the preload; pressure ends at
  // the commanded press force.
  CHECK(trace.samples[99].F_Z == 0.0);
  CHECK(trace.samples[199].F_Z == doctest::Approx(2.0));
  CHECK(trace.samples[299].F_Z == doctest::Approx(25.0));
}

TEST_CASE("press lift shows the slip-then-release tangential peak") {
  const Material mat = example_scene().effective_material();
  const GraspPlan p = feasible_plan(Strategy::top_grasp);
  const ForceTrace trace = execute(p, mat, kGripper);

  // Expected peak: min(mu0*F_N, mu1*F_N + P_cr) * 1.1, pulling backwards.
  const StiffnessProfile prof = derive_stiffness(mat);
  const double crit = critical_load(BucklingContext::edge(0.090, prof.EI));
  const double expected = std::min(0.6 * 25.0, 0.42 * 25.0 + crit) * 1.1;

  double peak = 0.0;
  for (const auto& s : trace.samples) {
    if (s.stage == StageName::lift) peak = std::min(peak, s.F_Y);
  }
  CHECK(-peak == doctest::Approx(expected).epsilon(1e-6));
  CHECK(-peak > 10.0);  // the release snap under default parameters
  CHECK(expected == doctest::Approx(11.7461).epsilon(1e-4));

  // The trace ends released: forces decay towards zero.
  CHECK(std::abs(trace.samples.back().F_Z) < 0.2);
  CHECK(std::abs(trace.samples.back().F_Y) < 0.5);
}

TEST_CASE("scoop finger rows split during lift") {
  const Material mat = example_scene().effective_material();
  const GraspPlan p = feasible_plan(Strategy::top_scoop);

  const ForceTrace left = execute(p, mat, kGripper, 0, TraceSide::left_finger);
  const ForceTrace right = execute(p, mat, kGripper, 0, TraceSide::right_finger);

  double left_min = 0.0, left_max = 0.0, right_min = 0.0;
  for (std::size_t i = 0; i < left.samples.size(); ++i) {
    if (left.samples[i].stage != StageName::lift) continue;
    left_min = std::min(left_min, left.samples[i].F_Y);
    left_max = std::max(left_max, left.samples[i].F_Y);
    right_min = std::min(right_min, right.samples[i].F_Y);
  }
  // The leading row keeps dragging forward; the trailing row reverses.
  CHECK(left_min >= 0.0);
  CHECK(left_max > 10.0);
  CHECK(right_min < -10.0);

  // The finger-frame map uses the scoop tilt.
  CHECK(left.tilt == doctest::Approx(deg_to_rad(5.0)));
  for (const auto& s : left.samples) {
    const auto [fn, ft] = wrench_to_contact({s.F_Z, s.F_Y, 0.0}, left.tilt);
    CHECK(s.F_N_f == doctest::Approx(fn).epsilon(1e-12));
    CHECK(s.F_tau_f == doctest::Approx(ft).epsilon(1e-12));
  }
}

TEST_CASE("wall slide plateaus at the inclination's normal force") {
  const Material mat = example_scene().effective_material();
  Scene scene = example_scene();

  struct Case { double deg, mm, N; };
  for (const Case c : {Case{5.0, 120.0, 1.0}, Case{30.0, 100.0, 10.0}, Case{60.0, 50.0, 60.0}}) {
    GraspRequest req = request(Strategy::wall_grasp);
    req.tilt = deg_to_rad(c.deg);
    req.distance = mm_to_m(c.mm);
    const GraspPlan p = plan(req, scene, kGripper);
    REQUIRE(p.feasible);
    const ForceTrace trace = execute(p, mat, kGripper);

    const double t0 = stage_start(p, StageName::slide);
    for (const auto& s : trace.samples) {
      if (s.stage == StageName::slide && s.t > t0 + 0.5) {
        CHECK(s.F_Z == doctest::Approx(c.N).epsilon(1e-12));
        CHECK(s.F_Y == doctest::Approx(0.42 * c.N).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("edge slide carries seeded friction fluctuations, release stays tame") {
  const Material mat = example_scene().effective_material();
  const GraspPlan p = feasible_plan(Strategy::edge_grasp);
  const ForceTrace trace = execute(p, mat, kGripper, 42);

  const double nominal = 0.42 * 25.0;
  double lo = 1e9, hi = -1e9;
  for (const auto& s : trace.samples) {
    if (s.stage != StageName::slide || s.t < stage_start(p, StageName::slide) + 0.3) continue;
    lo = std::min(lo, s.F_Y);
    hi = std::max(hi, s.F_Y);
    CHECK(s.F_Y >= nominal * 0.8 - 1e-9);
    CHECK(s.F_Y <= nominal * 1.2 + 1e-9);
  }
  CHECK(hi - lo > 0.1 * nominal);  // noise actually present

  // No reversal, no overshoot on the overhang regrasp: the tangential force
  // only decays.
  for (const auto& s : trace.samples) {
    if (s.stage == StageName::lift) {
      CHECK(s.F_Y >= 0.0);
      CHECK(s.F_Y <= nominal * 1.001);
    }
  }
}

TEST_CASE("traces are deterministic in the seed") {
  const Material mat = example_scene().effective_material();
  const GraspPlan p = feasible_plan(Strategy::edge_grasp);

  const ForceTrace a = execute(p, mat, kGripper, 9);
  const ForceTrace b = execute(p, mat, kGripper, 9);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].F_Z == b.samples[i].F_Z);
    CHECK(a.samples[i].F_Y == b.samples[i].F_Y);
  }

  const ForceTrace c = execute(p, mat, kGripper, 10);
  bool differs = false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i].F_Y != c.samples[i].F_Y) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("simulation refuses broken inputs") {
  const Material mat = example_scene().effective_material();
  GraspPlan bad = feasible_plan(Strategy::top_grasp);
  bad.feasible = false;
  CHECK_THROWS_AS(execute(bad, mat, kGripper), std::invalid_argument);

  const GraspPlan p = feasible_plan(Strategy::top_grasp);
  SimConfig cfg;
  cfg.sample_rate = 0;
  CHECK_THROWS_AS(execute(p, mat, kGripper, 0, TraceSide::gripper, cfg),
                  std::invalid_argument);
  cfg = SimConfig{};
  cfg.stage_duration = 0.0;
  CHECK_THROWS_AS(execute(p, mat, kGripper, 0, TraceSide::gripper, cfg),
                  std::invalid_argument);
}
