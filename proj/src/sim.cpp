#include "sheetgrasp/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "sheetgrasp/mechanics.hpp"
#include "sheetgrasp/rng.hpp"

namespace sheetgrasp {

namespace {

double lerp(double a, double b, double f) { return a + (b - a) * f; }

// Critical load of the span the strategy deforms, 0 when it deforms none.
double strategy_critical_load(const GraspPlan& plan, const Material& material,
                              const GripperModel& gripper) {
  const StiffnessProfile prof = derive_stiffness(material);
  switch (plan.strategy) {
    case Strategy::top_grasp:
    case Strategy::top_scoop: {
      const PositionClass pc = classify_grasp_position(*plan.request.x, gripper);
      const double span = pc.region == GraspRegion::edge ? *plan.request.x : gripper.W1;
      return critical_load({span, pc.length_factor, prof.EI});
    }
    case Strategy::wall_grasp:
      return critical_load(BucklingContext::edge(*plan.request.wrinkle_length, prof.EI));
    case Strategy::edge_grasp:
      return 0.0;
  }
  return 0.0;
}

// Tangential release: ramp to the peak over the first 30% of the stage,
// then exponential decay.
double lift_tangential(double frac, double duration, double start, double peak, double tau) {
  if (frac < 0.3) return lerp(start, peak, frac / 0.3);
  return peak * std::exp(-(frac - 0.3) * duration / tau);
}

}  // namespace

ForceTrace execute(const GraspPlan& plan, const Material& material,
                   const GripperModel& gripper, std::uint64_t seed, TraceSide side,
                   const SimConfig& config) {
  if (!plan.feasible) throw std::invalid_argument("execute: plan is infeasible");
  if (config.sample_rate < 1 || !(config.stage_duration > 0.0)) {
    throw std::invalid_argument("execute: bad sampling config");
  }
  material.validate();

  const bool press = plan.strategy == Strategy::top_grasp || plan.strategy == Strategy::top_scoop;
  const double tilt = (plan.strategy == Strategy::top_scoop ||
                       plan.strategy == Strategy::wall_grasp)
                          ? plan.request.tilt.value_or(0.0)
                          : 0.0;
  const double F_N = plan.request.normal_force;
  const double hold =
      plan.strategy == Strategy::wall_grasp ? slide_normal_force(tilt) : F_N;
  const double drag = 0.25 * material.mu1 * hold;
  const double crit = strategy_critical_load(plan, material, gripper);
  const double peak_mag =
      std::min(material.mu0 * hold, material.mu1 * hold + crit) * config.overshoot;

  // The scoop's leading finger row never reverses its drag on the sheet; the
  // trailing row (and a plain press) lets go and pulls back through lift.
  const bool reversal = !(plan.strategy == Strategy::top_scoop && side == TraceSide::left_finger) &&
                        plan.strategy != Strategy::edge_grasp;

  ForceTrace trace;
  trace.strategy = plan.strategy;
  trace.tilt = tilt;

  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(plan.strategy)));
  const int n = config.sample_rate;

  for (std::size_t si = 0; si < plan.stages.size(); ++si) {
    const StageName stage = plan.stages[si].name;
    const double t0 = static_cast<double>(si) * config.stage_duration;
    for (int k = 1; k <= n; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(n);
      TraceSample sample;
      sample.t = t0 + frac * config.stage_duration;
      sample.stage = stage;

      double F_Z = 0.0;
      double F_Y = 0.0;
      switch (stage) {
        case StageName::approach:
          break;
        case StageName::contact:
          F_Z = lerp(0.0, config.contact_preload, frac);
          break;
        case StageName::pressure:
          F_Z = lerp(config.contact_preload, F_N, frac);
          F_Y = lerp(0.0, drag, frac);
          break;
        case StageName::slide:
          if (plan.strategy == Strategy::wall_grasp) {
            if (frac < 0.2) {
              F_Z = lerp(config.contact_preload, hold, frac / 0.2);
              F_Y = lerp(0.0, material.mu1 * hold, frac / 0.2);
            } else {
              F_Z = hold;  // plateau at the tilt's slide normal force
              F_Y = material.mu1 * hold;
            }
          } else {  // edge grasp: friction-level fluctuation while pushing
            if (frac < 0.2) {
              F_Z = lerp(config.contact_preload, hold, frac / 0.2);
              F_Y = lerp(0.0, material.mu1 * hold, frac / 0.2);
            } else {
              F_Z = hold;
              F_Y = material.mu1 * hold * (1.0 + config.slide_band * rng.symmetric(1.0));
            }
          }
          break;
        case StageName::lift: {
          F_Z = hold * std::exp(-frac * config.stage_duration / config.decay_tau);
          const double start = press ? drag : material.mu1 * hold;
          if (plan.strategy == Strategy::edge_grasp) {
            F_Y = start * std::exp(-frac * config.stage_duration / config.decay_tau);
          } else {
            const double target = reversal ? -peak_mag : peak_mag;
            F_Y = lift_tangential(frac, config.stage_duration, start, target,
                                  config.decay_tau);
          }
          break;
        }
      }

      const auto [fnf, ftf] = wrench_to_contact({F_Z, F_Y, 0.0}, tilt);
      sample.F_Z = F_Z;
      sample.F_Y = F_Y;
      sample.F_N_f = fnf;
      sample.F_tau_f = ftf;
      trace.samples.push_back(sample);
    }
  }
  return trace;
}

}  // namespace sheetgrasp
