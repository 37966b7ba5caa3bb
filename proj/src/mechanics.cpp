#include "sheetgrasp/mechanics.hpp"

#include <cmath>
#include <numbers>

#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

BucklingContext::BucklingContext(double L, double mu_factor, double EI)
    : L(L), mu_factor(mu_factor), EI(EI) {
  if (!(L > 0.0)) throw std::invalid_argument("buckling: L must be positive");
  if (!(EI > 0.0)) throw std::invalid_argument("buckling: EI must be positive");
  if (mu_factor != kLengthFactorEdge && mu_factor != kLengthFactorNonEdge) {
    throw std::invalid_argument("buckling: length factor must be 0.7 (edge) or 0.5 (non-edge)");
  }
}

PinchStage pinch_stage(const ContactForces& forces, const Material& material) {
  if (forces.F_N < 0.0) throw std::invalid_argument("pinch_stage: F_N must be non-negative");
  if (forces.F_tau < 0.0) throw std::invalid_argument("pinch_stage: F_tau must be non-negative");
  if (forces.F_tau <= material.mu1 * forces.F_N) return PinchStage::rest;
  if (forces.F_tau <= material.mu0 * forces.F_N) return PinchStage::deforming;
  return PinchStage::slipping;
}

bool friction_condition(const Material& material) { return material.mu1 < material.mu0; }

double critical_load(const BucklingContext& ctx) {
  const double effective = ctx.mu_factor * ctx.L;
  return std::numbers::pi * std::numbers::pi * ctx.EI / (effective * effective);
}

std::pair<bool, double> buckling_feasible(double F_N, const Material& material,
                                          const BucklingContext& ctx) {
  if (F_N < 0.0) throw std::invalid_argument("buckling_feasible: F_N must be non-negative");
  const double margin = F_N * (material.mu0 - material.mu1) - critical_load(ctx);
  return {margin > 0.0, margin};
}

bool slide_condition(const ContactForces& forces, const Material& material) {
  return pinch_stage(forces, material) == PinchStage::deforming;
}

double cantilever_deflection(double length, const StiffnessProfile& profile) {
  if (length < 0.0) throw std::domain_error("cantilever_deflection: length must be non-negative");
  if (!(profile.EI > 0.0)) throw std::invalid_argument("cantilever_deflection: EI must be positive");
  if (profile.lambda < 0.0) throw std::invalid_argument("cantilever_deflection: lambda must be non-negative");
  const double L4 = length * length * length * length;
  return profile.lambda * kGravity * L4 / (8.0 * profile.EI);
}

std::pair<double, double> wrench_to_contact(const SensorWrench& wrench, double tilt) {
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  return {wrench.F_Z * c + wrench.F_Y * s, -wrench.F_Z * s + wrench.F_Y * c};
}

SensorWrench contact_to_wrench(double F_N_f, double F_tau_f, double tilt) {
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  SensorWrench w;
  w.F_Z = F_N_f * c - F_tau_f * s;
  w.F_Y = F_N_f * s + F_tau_f * c;
  return w;
}

}  // namespace sheetgrasp
